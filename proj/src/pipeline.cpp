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

#include "speller/pipeline.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cmath>

#include "speller/errors.hpp"
#include "speller/text.hpp"
#include "speller/tsv.hpp"

namespace speller {
namespace {

bool is_glob(std::string_view pattern) {
  return pattern.find_first_of("*?[") != std::string_view::npos;
}

}  // namespace

std::vector<Token> tokenize(std::string_view query) {
  std::vector<Token> tokens;
  for (auto& piece : split_whitespace(nfc(query))) {
    std::string lookup = normalize_term(piece);
    tokens.push_back({std::move(piece), std::move(lookup)});
  }
  return tokens;
}

void BoostConfig::add_rule(const std::string& application, std::string pattern,
                           double multiplier) {
  if (!(multiplier > 0) || !std::isfinite(multiplier)) {
    throw ArgumentError("boost multiplier must be finite and positive");
  }
  if (pattern.empty()) throw ArgumentError("empty boost pattern");
  rules[application].push_back(
      {is_glob(pattern) ? nfc(pattern) : normalize_term(pattern), multiplier});
}

double BoostConfig::multiplier_for(std::string_view application,
                                   std::string_view term) const {
  auto it = rules.find(std::string(application));
  if (it == rules.end()) return 1.0;
  double m = 1.0;
  const std::string t(term);
  for (const auto& rule : it->second) {
    const bool hit = is_glob(rule.pattern)
                         ? fnmatch(rule.pattern.c_str(), t.c_str(), 0) == 0
                         : rule.pattern == t;
    if (hit) m *= rule.multiplier;
  }
  return m;
}

double BoostConfig::threshold_for(std::string_view application) const {
  auto it = application_thresholds.find(std::string(application));
  return it == application_thresholds.end() ? threshold : it->second;
}

BoostConfig load_boost_config(const std::filesystem::path& file) {
  BoostConfig config;
  for_each_tsv_record(file, [&](const TsvRecord& r) {
    if (r.fields.size() != 3) {
      throw_load_error(file, r.line,
                       "expected application<TAB>term-or-pattern<TAB>multiplier");
    }
    const double m = parse_real(file, r.line, r.fields[2]);
    try {
      config.add_rule(std::string(r.fields[0]), std::string(r.fields[1]), m);
    } catch (const ArgumentError& e) {
      throw_load_error(file, r.line, e.what());
    }
  });
  return config;
}

void Artifacts::validate() const {
  if (!dict || !index || !model) {
    throw ConfigError("artifact set is incomplete");
  }
  if (dict->empty()) throw ConfigError("dictionary is empty");
  if (index->max_edit_distance() < 1) {
    throw ConfigError("delete index must cover at least edit distance 1");
  }
  try {
    model->validate();
  } catch (const ModelError& e) {
    throw ConfigError(std::string("ranker model invalid: ") + e.what());
  }
  if (std::find(model->schema.locales.begin(), model->schema.locales.end(),
                dict->locale()) == model->schema.locales.end()) {
    throw ConfigError("dictionary locale '" + dict->locale() +
                      "' is not in the model's feature schema");
  }
  for (const auto& [app, _] : mwe) {
    if (std::find(model->schema.applications.begin(),
                  model->schema.applications.end(),
                  app) == model->schema.applications.end()) {
      throw ConfigError("MWE map for unknown application '" + app + "'");
    }
  }
}

double CorrectionResult::confidence() const {
  double c = 1.0;
  for (const auto& t : tokens) c = std::min(c, t.confidence);
  return c;
}

CorrectionResult correct_query(std::string_view query,
                               const RequestContext& context,
                               const Artifacts& artifacts,
                               const CorrectOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (!artifacts.dict || !artifacts.index || !artifacts.model) {
    throw ConfigError("artifact set is incomplete");
  }
  const FrequencyDictionary& dict = *artifacts.dict;
  const MlpModel& model = *artifacts.model;
  model.schema.validate(context);

  CorrectionResult result;
  result.original = std::string(query);

  std::string rewritten;
  if (auto it = artifacts.mwe.find(context.application);
      it != artifacts.mwe.end()) {
    rewritten = apply_mwe(query, it->second);
  } else {
    rewritten = std::string(query);
  }

  const double threshold = artifacts.boost.threshold_for(context.application);
  std::vector<std::string> outputs;
  for (const Token& token : tokenize(rewritten)) {
    TokenCorrection tc;
    tc.input = token.text;
    tc.output = token.text;
    if (dict.find_normalized(token.lookup)) {
      tc.confidence = 1.0;
    } else {
      std::vector<Candidate> candidates =
          suggest(*artifacts.index, dict, token.lookup, options.suggest);
      if (!candidates.empty()) {
        candidates = rank(model, std::move(candidates), context, dict, token.lookup);
        for (auto& c : candidates) {
          c.score = *c.score *
                    artifacts.boost.multiplier_for(context.application, c.term());
        }
        sort_by_score(candidates);
        const double best = *candidates.front().score;
        if (best >= threshold) {
          tc.output = candidates.front().term();
          tc.changed = tc.output != token.text;
          tc.confidence = std::min(best, 1.0);
        }
        if (candidates.size() > options.top_k) candidates.resize(options.top_k);
        for (auto& c : candidates) c.score = std::min(*c.score, 1.0);
        tc.candidates = std::move(candidates);
      }
    }
    outputs.push_back(tc.output);
    result.tokens.push_back(std::move(tc));
  }
  result.corrected = join(outputs, " ");
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

std::map<std::string, std::uint64_t> load_query_log_token_counts(
    const std::filesystem::path& file) {
  std::map<std::string, std::uint64_t> counts;
  for_each_tsv_record(file, [&](const TsvRecord& r) {
    if (r.fields.size() != 2) throw_load_error(file, r.line, "expected query<TAB>count");
    const std::uint64_t n = parse_count(file, r.line, r.fields[1]);
    for (const auto& token : split_whitespace(normalize_term(r.fields[0]))) {
      counts[token] += n;
    }
  });
  return counts;
}

RefreshResult refresh_behavioral_stats(const std::filesystem::path& query_log,
                                       const FrequencyDictionary& dict,
                                       const DeleteIndex& index,
                                       const RefreshOptions& options) {
  const auto counts = load_query_log_token_counts(query_log);
  auto fresh = std::make_shared<FrequencyDictionary>(dict);
  RefreshResult result;
  for (const auto& [term, n] : counts) {
    if (n == 0) continue;
    if (auto id = fresh->find_normalized(term)) {
      fresh->set_word_count(*id, fresh->entry(*id).word_count + n);
      ++result.updated_terms;
    } else if (n >= options.min_new_term_count) {
      fresh->add(term, n);
      ++result.new_terms;
    }
  }
  result.index = std::make_shared<const DeleteIndex>(DeleteIndex::build(
      *fresh, index.max_edit_distance(), index.prefix_length()));
  result.dict = std::move(fresh);
  return result;
}

TrainingSet build_training_set(const std::vector<TrainingRow>& rows,
                               const FrequencyDictionary& dict,
                               const DeleteIndex& index,
                               const RequestContext& context,
                               const FeatureSchema& schema,
                               const SuggestOptions& suggest_options) {
  schema.validate(context);
  TrainingSet set;
  for (const auto& row : rows) {
    ++set.stats.rows;
    const auto corrupted = split_whitespace(normalize_term(row.corrupted));
    const auto original = split_whitespace(normalize_term(row.original));
    if (corrupted.size() != original.size()) continue;
    for (std::size_t i = 0; i < corrupted.size(); ++i) {
      if (corrupted[i] == original[i]) continue;
      ++set.stats.corrupted_tokens;
      if (dict.find_normalized(corrupted[i])) {
        ++set.stats.real_word_errors;
        continue;
      }
      auto candidates = suggest(index, dict, corrupted[i], suggest_options);
      const bool has_gold =
          std::any_of(candidates.begin(), candidates.end(),
                      [&](const Candidate& c) { return c.term() == original[i]; });
      if (!has_gold) {
        ++set.stats.dropped_no_gold;
        continue;
      }
      ++set.stats.groups;
      // Suggestion order is unspecified; sort for reproducible datasets.
      std::sort(candidates.begin(), candidates.end(),
                [](const Candidate& a, const Candidate& b) { return a.term() < b.term(); });
      for (const auto& c : candidates) {
        set.examples.push_back(
            {extract_features(c, context, dict, corrupted[i], schema),
             c.term() == original[i] ? 1 : 0});
      }
    }
  }
  return set;
}

}  // namespace speller
