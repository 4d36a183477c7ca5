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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "speller/datagen.hpp"
#include "speller/delete_index.hpp"
#include "speller/dictionary.hpp"
#include "speller/features.hpp"
#include "speller/mwe.hpp"
#include "speller/ranker.hpp"
#include "speller/suggester.hpp"

namespace speller {

struct Token {
  std::string text;    // NFC, original casing
  std::string lookup;  // NFC-lowercase
};

std::vector<Token> tokenize(std::string_view query);

struct BoostRule {
  std::string pattern;  // exact term, or a glob when it contains * ? [
  double multiplier = 1.0;
};

/// Postprocessor configuration: per-application score multipliers for
/// priority terms (product names, ...) and the acceptance threshold.
struct BoostConfig {
  std::map<std::string, std::vector<BoostRule>> rules;
  double threshold = 0.5;
  std::map<std::string, double> application_thresholds;

  void add_rule(const std::string& application, std::string pattern,
                double multiplier);
  // Product of the multipliers of every matching rule; 1 when none match.
  double multiplier_for(std::string_view application,
                        std::string_view term) const;
  double threshold_for(std::string_view application) const;
};

// `application<TAB>term-or-pattern<TAB>multiplier` lines.
BoostConfig load_boost_config(const std::filesystem::path& file);

/// Immutable tuple served to request handlers.
struct Artifacts {
  std::shared_ptr<const FrequencyDictionary> dict;
  std::shared_ptr<const DeleteIndex> index;
  std::shared_ptr<const MlpModel> model;
  std::map<std::string, MweMap> mwe;  // by application
  BoostConfig boost;

  // Throws ConfigError when a component is missing or incompatible.
  void validate() const;
};

struct TokenCorrection {
  std::string input;
  std::string output;
  bool changed = false;
  double confidence = 0;
  std::vector<Candidate> candidates;  // top-k, boosted scores clamped to 1
};

struct CorrectionResult {
  std::string original;
  std::string corrected;
  std::vector<TokenCorrection> tokens;
  std::chrono::nanoseconds elapsed{0};

  // Minimum token confidence; 1 for an empty query.
  double confidence() const;
};

struct CorrectOptions {
  std::size_t top_k = 5;
  SuggestOptions suggest;
};

// MWE rewrite, then per token: keep in-dictionary tokens, otherwise suggest,
// rank, boost and accept the best candidate iff its boosted score reaches
// the application's threshold.
CorrectionResult correct_query(std::string_view query,
                               const RequestContext& context,
                               const Artifacts& artifacts,
                               const CorrectOptions& options = {});

// Query-log TSV `query<TAB>count`, aggregated per normalized token.
std::map<std::string, std::uint64_t> load_query_log_token_counts(
    const std::filesystem::path& file);

struct RefreshOptions {
  std::uint64_t min_new_term_count = 100;
};

struct RefreshResult {
  std::shared_ptr<const FrequencyDictionary> dict;
  std::shared_ptr<const DeleteIndex> index;
  std::size_t updated_terms = 0;
  std::size_t new_terms = 0;
};

// Folds the log's token counts into a copy of `dict` (counts are added to
// known terms; unknown tokens seen at least `min_new_term_count` times are
// admitted) and rebuilds the delete index with `index`'s parameters.
RefreshResult refresh_behavioral_stats(const std::filesystem::path& query_log,
                                       const FrequencyDictionary& dict,
                                       const DeleteIndex& index,
                                       const RefreshOptions& options = {});

struct TrainingSetStats {
  std::size_t rows = 0;
  std::size_t corrupted_tokens = 0;
  std::size_t real_word_errors = 0;  // corruption landed on another term
  std::size_t dropped_no_gold = 0;   // gold absent from the suggestions
  std::size_t groups = 0;
};

struct TrainingSet {
  std::vector<TrainingExample> examples;
  TrainingSetStats stats;
};

// Labels each corrupted token's suggestions: the original token is 1, every
// other candidate 0. Tokens whose gold is not suggested are dropped.
TrainingSet build_training_set(const std::vector<TrainingRow>& rows,
                               const FrequencyDictionary& dict,
                               const DeleteIndex& index,
                               const RequestContext& context,
                               const FeatureSchema& schema,
                               const SuggestOptions& suggest_options = {});

}  // namespace speller
