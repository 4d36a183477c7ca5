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

#include "speller/features.hpp"

#include <algorithm>
#include <cmath>

#include "speller/delete_index.hpp"
#include "speller/double_metaphone.hpp"
#include "speller/edit_distance.hpp"
#include "speller/errors.hpp"
#include "speller/text.hpp"

namespace speller {

std::vector<std::string> FeatureSchema::feature_names() const {
  std::vector<std::string> names = {"word_count", "asset_frequency",
                                    "download_count", "edit_distance"};
  for (const auto& l : locales) names.push_back("locale=" + l);
  for (const auto& a : applications) names.push_back("application=" + a);
  names.push_back("phonetic_similarity");
  return names;
}

std::size_t FeatureSchema::locale_index(std::string_view locale) const {
  auto it = std::find(locales.begin(), locales.end(), locale);
  if (it == locales.end()) {
    throw ArgumentError("unknown locale '" + std::string(locale) + "'");
  }
  return static_cast<std::size_t>(it - locales.begin());
}

std::size_t FeatureSchema::application_index(
    std::string_view application) const {
  auto it = std::find(applications.begin(), applications.end(), application);
  if (it == applications.end()) {
    throw ArgumentError("unknown application '" + std::string(application) +
                        "'");
  }
  return static_cast<std::size_t>(it - applications.begin());
}

void FeatureSchema::validate(const RequestContext& context) const {
  locale_index(context.locale);
  application_index(context.application);
}

std::vector<double> FeatureVector::dense() const {
  std::vector<double> out(4 + locale_onehot.size() + application_onehot.size() + 1);
  write_dense(out);
  return out;
}

void FeatureVector::write_dense(std::span<double> out) const {
  std::size_t i = 0;
  out[i++] = word_count_n;
  out[i++] = asset_frequency_n;
  out[i++] = download_count_n;
  out[i++] = edit_distance_n;
  for (double v : locale_onehot) out[i++] = v;
  for (double v : application_onehot) out[i++] = v;
  out[i++] = phonetic_similarity;
}

double scale_count(std::uint64_t count, std::uint64_t max) {
  if (max == 0) return 0.0;
  const double v = std::log1p(static_cast<double>(count)) /
                   std::log1p(static_cast<double>(max));
  return std::clamp(v, 0.0, 1.0);
}

double phonetic_similarity(std::string_view a, std::string_view b) {
  const std::string ca = double_metaphone(a).primary;
  const std::string cb = double_metaphone(b).primary;
  if (ca == cb) return 1.0;
  if (ca.empty() || cb.empty()) return 0.0;
  const int d = damerau_levenshtein(std::string_view(ca), std::string_view(cb));
  const double longest = static_cast<double>(std::max(ca.size(), cb.size()));
  return std::clamp(1.0 - d / longest, 0.0, 1.0);
}

FeatureVector extract_features(const Candidate& candidate,
                               const RequestContext& context,
                               const FrequencyDictionary& dict,
                               std::string_view input_token,
                               const FeatureSchema& schema) {
  const std::size_t locale = schema.locale_index(context.locale);
  const std::size_t application = schema.application_index(context.application);
  const CountMaxima& max = dict.max_counts();
  const DictionaryEntry& e = candidate.entry;

  FeatureVector f;
  f.word_count_n = scale_count(e.word_count, max.word_count);
  f.asset_frequency_n = scale_count(e.asset_frequency, max.asset_frequency);
  f.download_count_n = scale_count(e.download_count, max.download_count);
  f.edit_distance_n = std::clamp(
      static_cast<double>(candidate.edit_distance) / DeleteIndex::kMaxEditDistance,
      0.0, 1.0);
  f.locale_onehot.assign(schema.locales.size(), 0.0);
  f.locale_onehot[locale] = 1.0;
  f.application_onehot.assign(schema.applications.size(), 0.0);
  f.application_onehot[application] = 1.0;
  f.phonetic_similarity =
      context.locale == "en"
          ? phonetic_similarity(normalize_term(input_token), e.term)
          : 0.5;
  return f;
}

}  // namespace speller
