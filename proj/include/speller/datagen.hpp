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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace speller {

enum class ErrorType {
  kLetterOrder,
  kVowelAddRemove,
  kLetterAddRemove,
  kLetterChange,
  kAccentFold,
  kDoubleAddRemove,
};

inline constexpr std::array<ErrorType, 6> kErrorTypes = {
    ErrorType::kLetterOrder,     ErrorType::kVowelAddRemove,
    ErrorType::kLetterAddRemove, ErrorType::kLetterChange,
    ErrorType::kAccentFold,      ErrorType::kDoubleAddRemove,
};

// Sampling weights, aligned with kErrorTypes.
inline constexpr std::array<int, 6> kErrorTypeWeights = {7, 5, 4, 2, 7, 2};

std::string_view error_type_name(ErrorType type);  // e.g. "LETTER_ORDER"
std::optional<ErrorType> parse_error_type(std::string_view name);

using Rng = std::mt19937_64;

/// Locale-specific typing model: keyboard rows for adjacency and the
/// companion-vowel table used by VOWEL_ADD_REMOVE insertions.
struct TypoProfile {
  std::string locale;
  std::vector<std::u32string> keyboard_rows;
  // vowel -> weighted list of companion vowels likely to be typed next to it
  std::map<char32_t, std::vector<std::pair<char32_t, int>>> vowel_companions;

  // Keys physically adjacent to `c` (same row, plus the staggered rows above
  // and below). Empty when `c` is not on the layout.
  std::vector<char32_t> neighbors(char32_t c) const;
  bool is_vowel(char32_t c) const;
};

// QWERTY for "en", AZERTY for "fr", QWERTZ for "de"; unknown locales use en.
const TypoProfile& typo_profile(std::string_view locale);

struct AppliedError {
  std::size_t token_index = 0;
  ErrorType type = ErrorType::kLetterOrder;

  bool operator==(const AppliedError&) const = default;
};

struct ErroredQuery {
  std::string original;
  std::vector<std::string> original_tokens;
  std::vector<std::string> corrupted_tokens;
  std::vector<AppliedError> applied;

  bool operator==(const ErroredQuery&) const = default;
};

struct AppliedToken {
  std::string text;
  ErrorType type;  // the type actually applied, after fallbacks
};

// One corruption of `token`. Falls back to LETTER_ORDER when `type` cannot
// apply and to a LETTER_ADD_REMOVE insertion for single-character tokens.
// The result always differs from `token`.
AppliedToken apply_error(std::string_view token, ErrorType type, Rng& rng,
                         const TypoProfile& profile = typo_profile("en"));

// Corrupts each token with probability `per_token_error_prob`, forcing at
// least one corruption per query. Tokens are NFC-lowercased first.
ErroredQuery inject_errors(std::string_view query, Rng& rng,
                           double per_token_error_prob = 0.5,
                           const TypoProfile& profile = typo_profile("en"));

ErrorType sample_error_type(Rng& rng);

// `misspelled<TAB>correct` pairs, normalized, duplicates kept.
std::vector<std::pair<std::string, std::string>> load_misspelling_corpus(
    const std::filesystem::path& file);

// Writes `corrupted_query<TAB>original_query<TAB>TYPE,TYPE` rows.
void write_training_row(std::ostream& out, const ErroredQuery& q);

struct TrainingRow {
  std::string corrupted;
  std::string original;
  std::vector<ErrorType> types;
};

std::vector<TrainingRow> load_training_rows(const std::filesystem::path& file);

}  // namespace speller
