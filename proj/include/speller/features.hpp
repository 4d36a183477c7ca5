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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speller/dictionary.hpp"
#include "speller/suggester.hpp"

namespace speller {

struct RequestContext {
  std::string locale = "en";
  std::string application = "stock";
};

/// Closed tag sets fixing the ranker's input layout:
/// [word_count, asset_frequency, download_count, edit_distance,
///  locale one-hot..., application one-hot..., phonetic_similarity].
struct FeatureSchema {
  std::vector<std::string> locales = {"en", "fr", "de"};
  std::vector<std::string> applications = {"stock", "express", "cchome"};

  std::size_t dimension() const {
    return 4 + locales.size() + applications.size() + 1;
  }
  std::vector<std::string> feature_names() const;
  // Index into `locales` / `applications`; throws ArgumentError if unknown.
  std::size_t locale_index(std::string_view locale) const;
  std::size_t application_index(std::string_view application) const;
  void validate(const RequestContext& context) const;

  bool operator==(const FeatureSchema&) const = default;
};

struct FeatureVector {
  double word_count_n = 0;
  double asset_frequency_n = 0;
  double download_count_n = 0;
  double edit_distance_n = 0;
  std::vector<double> locale_onehot;
  std::vector<double> application_onehot;
  double phonetic_similarity = 0;

  // Flattened in schema order.
  std::vector<double> dense() const;
  void write_dense(std::span<double> out) const;
};

// log1p(count) / log1p(max), 0 when max is 0.
double scale_count(std::uint64_t count, std::uint64_t max);

// 1 - DL(primary codes) / longer code length; 1 when both codes are empty,
// 0 when exactly one is.
double phonetic_similarity(std::string_view a, std::string_view b);

// Phonetic similarity is computed for English only; other locales get the
// neutral 0.5.
FeatureVector extract_features(const Candidate& candidate,
                               const RequestContext& context,
                               const FrequencyDictionary& dict,
                               std::string_view input_token,
                               const FeatureSchema& schema = {});

}  // namespace speller
