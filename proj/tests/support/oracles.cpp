// Copyright 2026 The Speller Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "speller/text.hpp"

namespace speller::testing {

int bfs_edit_distance(const std::u32string& a, const std::u32string& b,
                      int cap) {
  if (a == b) return 0;
  std::u32string alphabet = b;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  std::set<std::u32string> seen{a};
  std::vector<std::u32string> frontier{a};
  for (int depth = 1; depth <= cap; ++depth) {
    std::vector<std::u32string> next;
    auto visit = [&](std::u32string s) {
      if (seen.insert(s).second) next.push_back(std::move(s));
    };
    for (const auto& s : frontier) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::u32string del = s;
        del.erase(i, 1);
        visit(del);
        for (char32_t c : alphabet) {
          if (c == s[i]) continue;
          std::u32string sub = s;
          sub[i] = c;
          visit(sub);
        }
        if (i + 1 < s.size() && s[i] != s[i + 1]) {
          std::u32string swp = s;
          std::swap(swp[i], swp[i + 1]);
          visit(swp);
        }
      }
      for (std::size_t i = 0; i <= s.size(); ++i) {
        for (char32_t c : alphabet) {
          std::u32string ins = s;
          ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(i), c);
          visit(ins);
        }
      }
    }
    if (seen.count(b)) return depth;
    frontier = std::move(next);
  }
  return cap + 1;
}

int reference_damerau_levenshtein(const std::u32string& a,
                                  const std::u32string& b) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  const int inf = n + m;
  std::vector<std::vector<int>> d(n + 2, std::vector<int>(m + 2, 0));
  d[0][0] = inf;
  for (int i = 0; i <= n; ++i) {
    d[i + 1][0] = inf;
    d[i + 1][1] = i;
  }
  for (int j = 0; j <= m; ++j) {
    d[0][j + 1] = inf;
    d[1][j + 1] = j;
  }
  std::unordered_map<char32_t, int> last_row;
  for (int i = 1; i <= n; ++i) {
    int last_match_col = 0;
    for (int j = 1; j <= m; ++j) {
      const int k = last_row.count(b[j - 1]) ? last_row[b[j - 1]] : 0;
      const int l = last_match_col;
      int cost = 1;
      if (a[i - 1] == b[j - 1]) {
        cost = 0;
        last_match_col = j;
      }
      d[i + 1][j + 1] = std::min({d[i][j] + cost, d[i + 1][j] + 1,
                                  d[i][j + 1] + 1,
                                  d[k][l] + (i - k - 1) + 1 + (j - l - 1)});
    }
    last_row[a[i - 1]] = i;
  }
  return d[n + 1][m + 1];
}

std::map<std::string, int> brute_force_suggest(const FrequencyDictionary& dict,
                                               std::string_view token,
                                               int min_candidates) {
  const std::string key = normalize_term(token);
  if (dict.contains(key)) return {};
  const std::u32string t = to_u32(key);
  std::map<std::string, int> d1;
  std::map<std::string, int> d2;
  for (const auto& e : dict.entries()) {
    const int d = reference_damerau_levenshtein(t, to_u32(e.term));
    if (d == 1) d1[e.term] = 1;
    if (d == 2) d2[e.term] = 2;
  }
  if (static_cast<int>(d1.size()) >= min_candidates) return d1;
  d1.insert(d2.begin(), d2.end());
  return d1;
}

std::u32string random_word(std::mt19937_64& rng, const std::u32string& alphabet,
                           std::size_t min_length, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> len(min_length, max_length);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::u32string w(len(rng), U'a');
  for (auto& c : w) c = alphabet[pick(rng)];
  return w;
}

std::u32string random_edits(std::mt19937_64& rng, std::u32string word,
                            const std::u32string& alphabet, int edits) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int e = 0; e < edits; ++e) {
    const int op = std::uniform_int_distribution<int>(0, 3)(rng);
    if (word.empty() || op == 0) {
      const auto at = std::uniform_int_distribution<std::size_t>(0, word.size())(rng);
      word.insert(word.begin() + static_cast<std::ptrdiff_t>(at), alphabet[pick(rng)]);
      continue;
    }
    const auto at = std::uniform_int_distribution<std::size_t>(0, word.size() - 1)(rng);
    if (op == 1) {
      word.erase(at, 1);
    } else if (op == 2) {
      word[at] = alphabet[pick(rng)];
    } else if (at + 1 < word.size()) {
      std::swap(word[at], word[at + 1]);
    }
  }
  return word;
}

}  // namespace speller::testing
