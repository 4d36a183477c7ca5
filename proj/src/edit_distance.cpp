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

#include "speller/edit_distance.hpp"

#include <algorithm>
#include <vector>

#include "speller/text.hpp"

namespace speller {

int damerau_levenshtein(std::u32string_view a, std::u32string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n == 0) return static_cast<int>(m);
  if (m == 0) return static_cast<int>(n);

  thread_local std::vector<char32_t> alphabet;
  thread_local std::vector<int> a_sym, b_sym, last_row, table;

  alphabet.assign(a.begin(), a.end());
  alphabet.insert(alphabet.end(), b.begin(), b.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  auto symbol = [](char32_t c) {
    return static_cast<int>(
        std::lower_bound(alphabet.begin(), alphabet.end(), c) - alphabet.begin());
  };
  a_sym.resize(n);
  b_sym.resize(m);
  for (std::size_t i = 0; i < n; ++i) a_sym[i] = symbol(a[i]);
  for (std::size_t j = 0; j < m; ++j) b_sym[j] = symbol(b[j]);
  last_row.assign(alphabet.size(), 0);

  // (n + 2) x (m + 2) table with a sentinel border at row/column 0.
  const std::size_t width = m + 2;
  table.assign((n + 2) * width, 0);
  auto at = [width](std::size_t i, std::size_t j) -> int& {
    return table[i * width + j];
  };
  const int inf = static_cast<int>(n + m);
  at(0, 0) = inf;
  for (std::size_t i = 0; i <= n; ++i) {
    at(i + 1, 0) = inf;
    at(i + 1, 1) = static_cast<int>(i);
  }
  for (std::size_t j = 0; j <= m; ++j) {
    at(0, j + 1) = inf;
    at(1, j + 1) = static_cast<int>(j);
  }

  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t last_match_col = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t i1 = static_cast<std::size_t>(last_row[b_sym[j - 1]]);
      const std::size_t j1 = last_match_col;
      int cost = 1;
      if (a_sym[i - 1] == b_sym[j - 1]) {
        cost = 0;
        last_match_col = j;
      }
      const int substitute = at(i, j) + cost;
      const int insert = at(i + 1, j) + 1;
      const int remove = at(i, j + 1) + 1;
      const int transpose = at(i1, j1) + static_cast<int>(i - i1 - 1) + 1 +
                            static_cast<int>(j - j1 - 1);
      at(i + 1, j + 1) = std::min({substitute, insert, remove, transpose});
    }
    last_row[a_sym[i - 1]] = static_cast<int>(i);
  }
  return at(n + 1, m + 1);
}

int damerau_levenshtein(std::string_view a, std::string_view b) {
  return damerau_levenshtein(std::u32string_view(to_u32(a)),
                             std::u32string_view(to_u32(b)));
}

int damerau_levenshtein_bounded(std::u32string_view a, std::u32string_view b,
                                int max_distance) {
  const std::size_t gap = a.size() > b.size() ? a.size() - b.size()
                                              : b.size() - a.size();
  if (gap > static_cast<std::size_t>(max_distance)) return max_distance + 1;
  return std::min(damerau_levenshtein(a, b), max_distance + 1);
}

}  // namespace speller
