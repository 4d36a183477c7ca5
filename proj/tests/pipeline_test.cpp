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

#include <gtest/gtest.h>

#include <random>

#include "fixture.hpp"
#include "speller/datagen.hpp"
#include "speller/errors.hpp"
#include "speller/pipeline.hpp"
#include "speller/text.hpp"
#include "temp_dir.hpp"

namespace speller {
namespace {

std::vector<std::string> lookups(std::string_view query) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(query)) out.push_back(t.lookup);
  return out;
}

TEST(Tokenize, CollapsesWhitespace) {
  EXPECT_EQ(lookups("glacier  national park"),
            (std::vector<std::string>{"glacier", "national", "park"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize(" \t　 ").empty());
}

TEST(Tokenize, KeepsCasingButLowercasesLookup) {
  const auto tokens = tokenize("Atlantic Mackerel");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].text, "Atlantic");
  EXPECT_EQ(tokens[1].text, "Mackerel");
  EXPECT_EQ(lookups("Atlantic Mackerel"), (std::vector<std::string>{"atlantic", "mackerel"}));
  EXPECT_EQ(tokenize("Café")[0].text, "Café");
}

TEST(Boost, ExactAndGlobRulesMultiply) {
  BoostConfig boost;
  boost.add_rule("stock", "photoshop", 2.0);
  boost.add_rule("stock", "photo*", 1.5);
  boost.add_rule("express", "photoshop", 10.0);
  EXPECT_DOUBLE_EQ(boost.multiplier_for("stock", "photoshop"), 3.0);
  EXPECT_DOUBLE_EQ(boost.multiplier_for("stock", "photo"), 1.5);
  EXPECT_DOUBLE_EQ(boost.multiplier_for("stock", "shop"), 1.0);
  EXPECT_DOUBLE_EQ(boost.multiplier_for("express", "photo"), 1.0);
  EXPECT_DOUBLE_EQ(boost.multiplier_for("other", "photoshop"), 1.0);
  EXPECT_THROW(boost.add_rule("stock", "x", 0.0), ArgumentError);
  EXPECT_THROW(boost.add_rule("stock", "x", -1.0), ArgumentError);
  EXPECT_THROW(boost.add_rule("stock", "x", INFINITY), ArgumentError);
}

TEST(Boost, ThresholdPerApplication) {
  BoostConfig boost;
  boost.threshold = 0.4;
  boost.application_thresholds["express"] = 0.9;
  EXPECT_DOUBLE_EQ(boost.threshold_for("stock"), 0.4);
  EXPECT_DOUBLE_EQ(boost.threshold_for("express"), 0.9);
}

TEST(Boost, LoadsConfigFile) {
  testing::TempDir dir;
  const auto path = testing::write_text(dir / "boost.tsv",
                                        "# app\tpattern\tmultiplier\n"
                                        "stock\tPhotoshop\t2\n"
                                        "express\tadobe*\t1.25\n");
  const auto boost = load_boost_config(path);
  EXPECT_DOUBLE_EQ(boost.multiplier_for("stock", "photoshop"), 2.0);
  EXPECT_DOUBLE_EQ(boost.multiplier_for("express", "adobestock"), 1.25);
  testing::write_text(dir / "bad.tsv", "stock\tphotoshop\t-2\n");
  EXPECT_THROW(load_boost_config(dir / "bad.tsv"), LoadError);
}

TEST(Correct, FixesKeyboardSlip) {
  const auto artifacts = testing::toy_artifacts();
  const auto r = correct_query(",edal icon", {}, artifacts);
  EXPECT_EQ(r.corrected, "medal icon");
  ASSERT_EQ(r.tokens.size(), 2u);
  EXPECT_TRUE(r.tokens[0].changed);
  EXPECT_FALSE(r.tokens[1].changed);
  EXPECT_EQ(r.tokens[1].confidence, 1.0);
  EXPECT_FALSE(r.tokens[0].candidates.empty());
}

TEST(Correct, MweSplitsCompoundBeforeSuggesting) {
  const auto artifacts = testing::toy_artifacts();
  const auto r = correct_query("creativecloud", {}, artifacts);
  EXPECT_EQ(r.corrected, "creative cloud");
  ASSERT_EQ(r.tokens.size(), 2u);
  EXPECT_FALSE(r.tokens[0].changed);
  EXPECT_FALSE(r.tokens[1].changed);
  EXPECT_EQ(r.confidence(), 1.0);
  // Maps are per application.
  EXPECT_NE(correct_query("creativecloud", {"en", "express"}, artifacts).corrected,
            "creative cloud");
}

TEST(Correct, AllCorrectQueryIsUnchanged) {
  const auto artifacts = testing::toy_artifacts();
  const auto r = correct_query("Glacier National  Park", {}, artifacts);
  EXPECT_EQ(r.corrected, "Glacier National Park");
  for (const auto& t : r.tokens) {
    EXPECT_FALSE(t.changed);
    EXPECT_EQ(t.output, t.input);
    EXPECT_EQ(t.confidence, 1.0);
  }
  EXPECT_EQ(correct_query("", {}, artifacts).corrected, "");
  EXPECT_EQ(correct_query("", {}, artifacts).confidence(), 1.0);
}

TEST(Correct, UnknownTokenWithoutCandidatesPassesThrough) {
  const auto artifacts = testing::toy_artifacts();
  const auto r = correct_query("zzzzzzzz", {}, artifacts);
  EXPECT_EQ(r.corrected, "zzzzzzzz");
  EXPECT_FALSE(r.tokens[0].changed);
  EXPECT_TRUE(r.tokens[0].candidates.empty());
}

TEST(Correct, RejectsUnknownContext) {
  const auto artifacts = testing::toy_artifacts();
  EXPECT_THROW(correct_query("cat", {"xx", "stock"}, artifacts), ArgumentError);
  EXPECT_THROW(correct_query("cat", {"en", "nope"}, artifacts), ArgumentError);
  Artifacts incomplete = artifacts;
  incomplete.model.reset();
  EXPECT_THROW(correct_query("cat", {}, incomplete), ConfigError);
}

std::vector<std::string> corrupted_queries(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& vocab = testing::toy_vocabulary();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> words;
    for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) {
      words.push_back(vocab[rng() % vocab.size()].first);
    }
    out.push_back(join(inject_errors(join(words, " "), rng).corrupted_tokens, " "));
  }
  return out;
}

TEST(Correct, NeverAcceptsBelowThreshold) {
  for (double tau : {0.0, 0.3, 0.5, 0.8, 0.95}) {
    auto artifacts = testing::toy_artifacts();
    artifacts.boost.threshold = tau;
    for (const auto& q : corrupted_queries(150, 31)) {
      const auto r = correct_query(q, {}, artifacts);
      for (const auto& t : r.tokens) {
        if (!t.changed) continue;
        ASSERT_FALSE(t.candidates.empty());
        EXPECT_GE(*t.candidates.front().score, tau) << q;
        EXPECT_EQ(t.candidates.front().term(), t.output);
      }
    }
  }
}

TEST(Correct, ThresholdAboveAnyScoreChangesNothing) {
  auto artifacts = testing::toy_artifacts();
  artifacts.boost.threshold = 1.0;
  artifacts.mwe.clear();
  for (const auto& q : corrupted_queries(100, 32)) {
    const auto r = correct_query(q, {}, artifacts);
    for (const auto& t : r.tokens) {
      if (!t.candidates.empty() && *t.candidates.front().score < 1.0) {
        EXPECT_FALSE(t.changed) << q;
      }
    }
  }
}

TEST(Correct, UniformBoostKeepsArgmax) {
  auto plain = testing::toy_artifacts();
  plain.boost.threshold = 0.0;
  auto boosted = plain;
  boosted.boost.add_rule("stock", "*", 3.5);
  for (const auto& q : corrupted_queries(150, 33)) {
    const auto a = correct_query(q, {}, plain);
    const auto b = correct_query(q, {}, boosted);
    EXPECT_EQ(a.corrected, b.corrected) << q;
  }
}

TEST(Correct, BoostCanFlipTheWinner) {
  auto artifacts = testing::toy_artifacts();
  artifacts.boost.threshold = 0.0;
  const auto plain = correct_query("pedak", {}, artifacts);
  ASSERT_GE(plain.tokens[0].candidates.size(), 2u);
  const std::string loser = plain.tokens[0].candidates[1].term();
  artifacts.boost.add_rule("stock", loser, 1e6);
  EXPECT_EQ(correct_query("pedak", {}, artifacts).corrected, loser);
  EXPECT_LE(*correct_query("pedak", {}, artifacts).tokens[0].candidates[0].score, 1.0);
}

TEST(Correct, IdempotentOnInDictionaryOutput) {
  const auto artifacts = testing::toy_artifacts();
  for (const auto& q : corrupted_queries(200, 34)) {
    const auto once = correct_query(q, {}, artifacts);
    bool all_known = true;
    for (const auto& t : tokenize(once.corrected)) {
      all_known = all_known && artifacts.dict->contains(t.lookup);
    }
    if (!all_known) continue;
    const auto twice = correct_query(once.corrected, {}, artifacts);
    EXPECT_EQ(twice.corrected, once.corrected);
    for (const auto& t : twice.tokens) EXPECT_FALSE(t.changed);
  }
}

TEST(Correct, CorrectedIsJoinOfOutputs) {
  const auto artifacts = testing::toy_artifacts();
  for (const auto& q : corrupted_queries(100, 35)) {
    const auto r = correct_query(q, {}, artifacts);
    std::vector<std::string> outs;
    for (const auto& t : r.tokens) {
      outs.push_back(t.output);
      EXPECT_LE(t.candidates.size(), 5u);
      EXPECT_GE(t.confidence, 0.0);
      EXPECT_LE(t.confidence, 1.0);
      if (!t.changed) EXPECT_EQ(t.output, t.input);
    }
    EXPECT_EQ(r.corrected, join(outs, " "));
  }
}

TEST(Artifacts, ValidateCatchesMismatch) {
  auto artifacts = testing::toy_artifacts();
  EXPECT_NO_THROW(artifacts.validate());
  auto no_index = artifacts;
  no_index.index.reset();
  EXPECT_THROW(no_index.validate(), ConfigError);
  auto wrong_locale = artifacts;
  auto de = std::make_shared<FrequencyDictionary>(*artifacts.dict);
  auto swapped = std::make_shared<FrequencyDictionary>("xx");
  for (const auto& e : de->entries()) swapped->add(e.term, e.word_count);
  wrong_locale.dict = swapped;
  wrong_locale.index = std::make_shared<const DeleteIndex>(DeleteIndex::build(*swapped));
  EXPECT_THROW(wrong_locale.validate(), ConfigError);
}

TEST(Refresh, AdmitsFrequentNewTerm) {
  const auto dict = testing::toy_dictionary();
  const auto index = DeleteIndex::build(*dict);
  testing::TempDir dir;
  const auto log = testing::write_text(dir / "log.tsv",
                                       "blockchain\t600\n"
                                       "Blockchain art\t400\n"
                                       "museum\t10\n");
  const auto r = refresh_behavioral_stats(log, *dict, index);
  ASSERT_TRUE(r.dict->contains("blockchain"));
  EXPECT_EQ(r.dict->find("blockchain")->word_count, 1000u);
  EXPECT_EQ(r.dict->find("museum")->word_count, 1010u);
  EXPECT_EQ(r.new_terms, 2u);  // "art" is also new and reaches 400
  EXPECT_FALSE(dict->contains("blockchain"));
  EXPECT_EQ(dict->find("museum")->word_count, 1000u);

  Artifacts artifacts = testing::toy_artifacts();
  artifacts.dict = r.dict;
  artifacts.index = r.index;
  EXPECT_EQ(correct_query("blockchian", {}, artifacts).tokens[0].candidates.front().term(),
            "blockchain");
}

TEST(Refresh, BelowThresholdKeepsTermSet) {
  const auto dict = testing::toy_dictionary();
  const auto index = DeleteIndex::build(*dict);
  testing::TempDir dir;
  const auto log = testing::write_text(dir / "log.tsv", "covid\t99\nmuseum\t5\n");
  const auto r = refresh_behavioral_stats(log, *dict, index);
  EXPECT_FALSE(r.dict->contains("covid"));
  EXPECT_EQ(r.dict->size(), dict->size());
  EXPECT_EQ(r.new_terms, 0u);
  EXPECT_EQ(r.updated_terms, 1u);
  RefreshOptions low;
  low.min_new_term_count = 50;
  EXPECT_TRUE(refresh_behavioral_stats(log, *dict, index, low).dict->contains("covid"));
}

TEST(Refresh, EmptyLogIsNoOp) {
  const auto dict = testing::toy_dictionary();
  const auto index = DeleteIndex::build(*dict);
  testing::TempDir dir;
  const auto log = testing::write_text(dir / "log.tsv", "");
  const auto r = refresh_behavioral_stats(log, *dict, index);
  EXPECT_EQ(r.dict->entries(), dict->entries());
  EXPECT_EQ(r.dict->max_counts(), dict->max_counts());
  EXPECT_TRUE(*r.index == index);
}

TEST(Refresh, MalformedLogIsLoadError) {
  const auto dict = testing::toy_dictionary();
  const auto index = DeleteIndex::build(*dict);
  testing::TempDir dir;
  testing::write_text(dir / "a.tsv", "museum\tmany\n");
  testing::write_text(dir / "b.tsv", "museum\n");
  EXPECT_THROW(refresh_behavioral_stats(dir / "a.tsv", *dict, index), LoadError);
  EXPECT_THROW(refresh_behavioral_stats(dir / "b.tsv", *dict, index), LoadError);
  EXPECT_THROW(refresh_behavioral_stats(dir / "none.tsv", *dict, index), LoadError);
}

TEST(TrainingSet, OnePositivePerGroup) {
  const auto dict = testing::toy_dictionary();
  const auto index = DeleteIndex::build(*dict);
  const std::vector<TrainingRow> rows = {
      {"muzeem", "museum", {}},
      {",edal icon", "medal icon", {}},
      {"pedal", "medal", {}},         // lands on another term
      {"qqqqqqqq", "museum", {}},     // gold out of reach
      {"cat dog", "cat", {}},         // token counts differ
  };
  const auto set = build_training_set(rows, *dict, index, {}, {});
  EXPECT_EQ(set.stats.rows, 5u);
  EXPECT_EQ(set.stats.corrupted_tokens, 4u);
  EXPECT_EQ(set.stats.real_word_errors, 1u);
  EXPECT_EQ(set.stats.dropped_no_gold, 1u);
  EXPECT_EQ(set.stats.groups, 2u);
  std::size_t positives = 0;
  for (const auto& ex : set.examples) positives += ex.label;
  EXPECT_EQ(positives, 2u);
  EXPECT_GT(set.examples.size(), 2u);
  const auto again = build_training_set(rows, *dict, index, {}, {});
  ASSERT_EQ(again.examples.size(), set.examples.size());
  for (std::size_t i = 0; i < set.examples.size(); ++i) {
    EXPECT_EQ(again.examples[i].features.dense(), set.examples[i].features.dense());
    EXPECT_EQ(again.examples[i].label, set.examples[i].label);
  }
}

}  // namespace
}  // namespace speller
