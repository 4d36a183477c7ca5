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

#include "speller/datagen.hpp"

#include <algorithm>
#include <ostream>

#include "speller/errors.hpp"
#include "speller/text.hpp"
#include "speller/tsv.hpp"

namespace speller {
namespace {

constexpr std::array<std::string_view, 6> kErrorTypeNames = {
    "LETTER_ORDER",  "VOWEL_ADD_REMOVE", "LETTER_ADD_REMOVE",
    "LETTER_CHANGE", "ACCENT_FOLD",      "DOUBLE_ADD_REMOVE",
};

constexpr std::u32string_view kVowels = U"aeiouyàâäáéèêëíîïóôöúùûü";

// Accented character -> unaccented class representative.
std::u32string_view accent_base(char32_t c) {
  switch (c) {
    case U'à': case U'â': case U'ä': case U'á': return U"a";
    case U'é': case U'è': case U'ê': case U'ë': return U"e";
    case U'î': case U'ï': case U'í': return U"i";
    case U'ô': case U'ö': case U'ó': return U"o";
    case U'ù': case U'û': case U'ü': case U'ú': return U"u";
    case U'ç': return U"c";
    case U'ß': return U"ss";
    default: return {};
  }
}

char32_t fold_char(char32_t c) {
  auto base = accent_base(c);
  return base.size() == 1 ? base[0] : c;
}

std::map<char32_t, std::vector<std::pair<char32_t, int>>> default_companions() {
  return {
      {U'a', {{U'i', 4}, {U'u', 3}, {U'e', 2}, {U'o', 1}}},
      {U'e', {{U'i', 5}, {U'a', 3}, {U'e', 2}, {U'u', 1}}},
      {U'i', {{U'e', 4}, {U'a', 3}, {U'o', 2}, {U'u', 1}}},
      {U'o', {{U'u', 4}, {U'i', 3}, {U'o', 2}, {U'a', 1}}},
      {U'u', {{U'i', 4}, {U'e', 3}, {U'a', 2}, {U'o', 1}}},
      {U'y', {{U'e', 3}, {U'a', 2}, {U'o', 1}}},
  };
}

TypoProfile make_profile(std::string locale,
                         std::vector<std::u32string> rows) {
  TypoProfile p;
  p.locale = std::move(locale);
  p.keyboard_rows = std::move(rows);
  p.vowel_companions = default_companions();
  return p;
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng) { return std::bernoulli_distribution(0.5)(rng); }

using Edit = std::optional<std::u32string>;

Edit letter_order(std::u32string s, Rng& rng) {
  std::vector<std::size_t> spots;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] != s[i + 1]) spots.push_back(i);
  }
  if (spots.empty()) return std::nullopt;
  const std::size_t i = spots[uniform_index(rng, spots.size())];
  std::swap(s[i], s[i + 1]);
  return s;
}

char32_t random_letter(Rng& rng, char32_t avoid) {
  static constexpr std::u32string_view kLetters = U"abcdefghijklmnopqrstuvwxyz";
  char32_t c;
  do {
    c = kLetters[uniform_index(rng, kLetters.size())];
  } while (c == avoid);
  return c;
}

std::u32string insert_letter(std::u32string s, Rng& rng,
                             const TypoProfile& profile) {
  const std::size_t anchor = uniform_index(rng, s.size());
  const char32_t base = s[anchor];
  auto neighbors = profile.neighbors(fold_char(base));
  if (neighbors.empty() || coin(rng)) {
    s.insert(s.begin() + anchor + 1, base);  // duplicate
  } else {
    const char32_t c = neighbors[uniform_index(rng, neighbors.size())];
    const std::size_t at = coin(rng) ? anchor + 1 : anchor;
    s.insert(s.begin() + at, c);
  }
  return s;
}

Edit letter_add_remove(std::u32string s, Rng& rng, const TypoProfile& profile) {
  if (s.size() >= 2 && coin(rng)) {
    s.erase(uniform_index(rng, s.size()), 1);
    return s;
  }
  return insert_letter(std::move(s), rng, profile);
}

Edit vowel_add_remove(std::u32string s, Rng& rng, const TypoProfile& profile) {
  std::vector<std::size_t> vowels;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (profile.is_vowel(s[i])) vowels.push_back(i);
  }
  if (vowels.empty()) return std::nullopt;
  const std::size_t at = vowels[uniform_index(rng, vowels.size())];
  if (s.size() >= 2 && coin(rng)) {
    s.erase(at, 1);
    return s;
  }
  auto it = profile.vowel_companions.find(fold_char(s[at]));
  char32_t companion = U'e';
  if (it != profile.vowel_companions.end() && !it->second.empty()) {
    std::vector<int> weights;
    for (const auto& [c, w] : it->second) weights.push_back(w);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    companion = it->second[pick(rng)].first;
  }
  s.insert(s.begin() + at + 1, companion);
  return s;
}

Edit letter_change(std::u32string s, Rng& rng, const TypoProfile& profile) {
  const std::size_t at = uniform_index(rng, s.size());
  const char32_t original = s[at];
  auto neighbors = profile.neighbors(fold_char(original));
  std::erase(neighbors, original);
  s[at] = neighbors.empty() ? random_letter(rng, original)
                            : neighbors[uniform_index(rng, neighbors.size())];
  return s;
}

Edit accent_fold(std::u32string s, Rng& rng) {
  std::vector<std::size_t> accented;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!accent_base(s[i]).empty()) accented.push_back(i);
  }
  if (accented.empty()) return std::nullopt;
  const std::size_t at = accented[uniform_index(rng, accented.size())];
  s.replace(at, 1, accent_base(s[at]));
  return s;
}

Edit double_add_remove(std::u32string s, Rng& rng) {
  std::vector<std::size_t> doubles;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == s[i + 1]) doubles.push_back(i);
  }
  if (!doubles.empty()) {
    s.erase(doubles[uniform_index(rng, doubles.size())], 1);
    return s;
  }
  const std::size_t at = uniform_index(rng, s.size());
  s.insert(s.begin() + at, s[at]);
  return s;
}

Edit apply_exact(const std::u32string& s, ErrorType type, Rng& rng,
                 const TypoProfile& profile) {
  switch (type) {
    case ErrorType::kLetterOrder: return letter_order(s, rng);
    case ErrorType::kVowelAddRemove: return vowel_add_remove(s, rng, profile);
    case ErrorType::kLetterAddRemove: return letter_add_remove(s, rng, profile);
    case ErrorType::kLetterChange: return letter_change(s, rng, profile);
    case ErrorType::kAccentFold: return accent_fold(s, rng);
    case ErrorType::kDoubleAddRemove: return double_add_remove(s, rng);
  }
  return std::nullopt;
}

}  // namespace

std::string_view error_type_name(ErrorType type) {
  return kErrorTypeNames[static_cast<std::size_t>(type)];
}

std::optional<ErrorType> parse_error_type(std::string_view name) {
  for (std::size_t i = 0; i < kErrorTypeNames.size(); ++i) {
    if (kErrorTypeNames[i] == name) return kErrorTypes[i];
  }
  return std::nullopt;
}

std::vector<char32_t> TypoProfile::neighbors(char32_t c) const {
  std::vector<char32_t> out;
  for (std::size_t r = 0; r < keyboard_rows.size(); ++r) {
    const std::size_t col = keyboard_rows[r].find(c);
    if (col == std::u32string::npos) continue;
    auto take = [&](std::size_t row, std::ptrdiff_t k) {
      if (row >= keyboard_rows.size() || k < 0) return;
      const auto& keys = keyboard_rows[row];
      if (static_cast<std::size_t>(k) < keys.size()) out.push_back(keys[k]);
    };
    const auto k = static_cast<std::ptrdiff_t>(col);
    take(r, k - 1);
    take(r, k + 1);
    if (r > 0) {
      take(r - 1, k);
      take(r - 1, k + 1);
    }
    take(r + 1, k - 1);
    take(r + 1, k);
    break;
  }
  std::erase(out, c);
  return out;
}

bool TypoProfile::is_vowel(char32_t c) const {
  return kVowels.find(c) != std::u32string_view::npos;
}

const TypoProfile& typo_profile(std::string_view locale) {
  static const TypoProfile en = make_profile(
      "en", {U"1234567890-=", U"qwertyuiop[]", U"asdfghjkl;'", U"zxcvbnm,./"});
  static const TypoProfile fr = make_profile(
      "fr", {U"&é\"'(-è_çà)=", U"azertyuiop^$", U"qsdfghjklmù*", U"wxcvbn,;:!"});
  static const TypoProfile de = make_profile(
      "de", {U"1234567890ß´", U"qwertzuiopü+", U"asdfghjklöä#", U"yxcvbnm,.-"});
  if (locale == "fr") return fr;
  if (locale == "de") return de;
  return en;
}

ErrorType sample_error_type(Rng& rng) {
  std::discrete_distribution<std::size_t> pick(kErrorTypeWeights.begin(),
                                               kErrorTypeWeights.end());
  return kErrorTypes[pick(rng)];
}

AppliedToken apply_error(std::string_view token, ErrorType type, Rng& rng,
                         const TypoProfile& profile) {
  const std::u32string s = to_u32(token);
  if (s.empty()) throw ArgumentError("cannot corrupt an empty token");
  if (s.size() == 1) {
    return {to_utf8(insert_letter(s, rng, profile)),
            ErrorType::kLetterAddRemove};
  }
  if (auto out = apply_exact(s, type, rng, profile)) {
    return {to_utf8(*out), type};
  }
  if (auto out = letter_order(s, rng)) {
    return {to_utf8(*out), ErrorType::kLetterOrder};
  }
  // Runs of one repeated character ("aaa") cannot be reordered.
  return {to_utf8(insert_letter(s, rng, profile)), ErrorType::kLetterAddRemove};
}

ErroredQuery inject_errors(std::string_view query, Rng& rng,
                           double per_token_error_prob,
                           const TypoProfile& profile) {
  if (!(per_token_error_prob >= 0.0 && per_token_error_prob <= 1.0)) {
    throw ArgumentError("per_token_error_prob must lie in (0, 1]");
  }
  ErroredQuery q;
  q.original = nfc(query);
  q.original_tokens = split_whitespace(normalize_term(query));
  if (q.original_tokens.empty()) throw ArgumentError("query has no tokens");
  q.corrupted_tokens = q.original_tokens;

  std::bernoulli_distribution select(per_token_error_prob);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < q.original_tokens.size(); ++i) {
    if (select(rng)) chosen.push_back(i);
  }
  if (chosen.empty()) {
    chosen.push_back(uniform_index(rng, q.original_tokens.size()));
  }
  for (std::size_t i : chosen) {
    const ErrorType wanted = sample_error_type(rng);
    AppliedToken applied = apply_error(q.original_tokens[i], wanted, rng, profile);
    q.corrupted_tokens[i] = std::move(applied.text);
    q.applied.push_back({i, applied.type});
  }
  return q;
}

std::vector<std::pair<std::string, std::string>> load_misspelling_corpus(
    const std::filesystem::path& file) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for_each_tsv_record(file, [&](const TsvRecord& r) {
    if (r.fields.size() != 2) {
      throw_load_error(file, r.line, "expected misspelled<TAB>correct");
    }
    std::string wrong = canonical_query(r.fields[0]);
    std::string right = canonical_query(r.fields[1]);
    if (wrong.empty() || right.empty()) {
      throw_load_error(file, r.line, "empty field");
    }
    pairs.emplace_back(std::move(wrong), std::move(right));
  });
  return pairs;
}

void write_training_row(std::ostream& out, const ErroredQuery& q) {
  out << join(q.corrupted_tokens, " ") << '\t' << join(q.original_tokens, " ")
      << '\t';
  for (std::size_t i = 0; i < q.applied.size(); ++i) {
    if (i) out << ',';
    out << error_type_name(q.applied[i].type);
  }
  out << '\n';
}

std::vector<TrainingRow> load_training_rows(const std::filesystem::path& file) {
  std::vector<TrainingRow> rows;
  for_each_tsv_record(file, [&](const TsvRecord& r) {
    if (r.fields.size() < 2 || r.fields.size() > 3) {
      throw_load_error(file, r.line,
                       "expected corrupted<TAB>original[<TAB>types]");
    }
    TrainingRow row;
    row.corrupted = std::string(r.fields[0]);
    row.original = std::string(r.fields[1]);
    if (r.fields.size() == 3 && !r.fields[2].empty()) {
      std::string_view rest = r.fields[2];
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        auto type = parse_error_type(rest.substr(0, comma));
        if (!type) throw_load_error(file, r.line, "unknown error type");
        row.types.push_back(*type);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    rows.push_back(std::move(row));
  });
  return rows;
}

}  // namespace speller
