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

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "speller/delete_index.hpp"
#include "speller/errors.hpp"
#include "speller/text.hpp"

namespace speller {
namespace {

std::set<std::string> terms_of(const FrequencyDictionary& dict,
                               const std::vector<TermId>& ids) {
  std::set<std::string> out;
  for (TermId id : ids) out.insert(dict.entry(id).term);
  return out;
}

FrequencyDictionary dict_of(std::initializer_list<const char*> terms) {
  FrequencyDictionary dict;
  for (const char* t : terms) dict.add(t, 1);
  return dict;
}

TEST(GenerateDeletes, DepthOne) {
  EXPECT_EQ(generate_deletes("abc", 1), (std::set<std::string>{"ab", "ac", "bc"}));
}

TEST(GenerateDeletes, DepthTwo) {
  EXPECT_EQ(generate_deletes("abc", 2),
            (std::set<std::string>{"ab", "ac", "bc", "a", "b", "c"}));
}

TEST(GenerateDeletes, SingleCharacterYieldsEmptyString) {
  EXPECT_EQ(generate_deletes("a", 1), (std::set<std::string>{""}));
  EXPECT_TRUE(generate_deletes("abc", 0).empty());
}

TEST(GenerateDeletes, RepeatedLettersAndUnicode) {
  EXPECT_EQ(generate_deletes("aab", 1), (std::set<std::string>{"ab", "aa"}));
  EXPECT_EQ(generate_deletes("été", 1), (std::set<std::string>{"té", "éé", "ét"}));
}

TEST(GenerateDeletes, MatchesIndependentEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::string term = to_utf8(testing::random_word(rng, U"abcd", 1, 6));
    std::set<std::string> expected;
    std::set<std::string> level{term};
    for (int depth = 1; depth <= 2; ++depth) {
      std::set<std::string> next;
      for (const auto& s : level) {
        for (std::size_t i = 0; i < s.size(); ++i) {
          next.insert(s.substr(0, i) + s.substr(i + 1));
        }
      }
      expected.insert(next.begin(), next.end());
      level = next;
    }
    expected.erase(term);
    EXPECT_EQ(generate_deletes(term, 2), expected) << term;
  }
}

TEST(GenerateDeletes, RejectsOutOfRangeDistance) {
  EXPECT_THROW(generate_deletes("abc", 3), ArgumentError);
  EXPECT_THROW(generate_deletes("abc", -1), ArgumentError);
}

TEST(DeleteIndex, SingleTermDepthOne) {
  const auto dict = dict_of({"cat"});
  const auto index = DeleteIndex::build(dict, 1);
  EXPECT_EQ(index.key_count(), 4u);
  for (const char* key : {"cat", "at", "ct", "ca"}) {
    EXPECT_EQ(terms_of(dict, index.variants(dict, key)), std::set<std::string>{"cat"})
        << key;
  }
  EXPECT_TRUE(index.variants(dict, "t").empty());
  EXPECT_TRUE(index.variants(dict, "dog").empty());
}

TEST(DeleteIndex, SharedVariantAccumulatesTerms) {
  const auto dict = dict_of({"at", "cat"});
  const auto index = DeleteIndex::build(dict, 1);
  EXPECT_EQ(terms_of(dict, index.variants(dict, "at")),
            (std::set<std::string>{"at", "cat"}));
}

TEST(DeleteIndex, DistanceZeroIsIdentityOnly) {
  const auto dict = dict_of({"cat"});
  const auto index = DeleteIndex::build(dict, 0);
  EXPECT_EQ(index.key_count(), 1u);
  EXPECT_EQ(terms_of(dict, index.variants(dict, "cat")), std::set<std::string>{"cat"});
  EXPECT_TRUE(index.variants(dict, "at").empty());
}

TEST(DeleteIndex, PrefixLimitsKeys) {
  const auto dict = dict_of({"abcdefghij"});
  const auto index = DeleteIndex::build(dict, 2, 7);
  EXPECT_EQ(terms_of(dict, index.variants(dict, "abcdefg")),
            std::set<std::string>{"abcdefghij"});
  EXPECT_EQ(terms_of(dict, index.variants(dict, "bcdef")),
            std::set<std::string>{"abcdefghij"});
  EXPECT_TRUE(index.variants(dict, "abcdefghij").empty());
  EXPECT_EQ(index.key_count(), 1u + 7u + 21u);
}

TEST(DeleteIndex, RejectsBadParameters) {
  const auto dict = dict_of({"cat"});
  EXPECT_THROW(DeleteIndex::build(dict, 3), ArgumentError);
  EXPECT_THROW(DeleteIndex::build(dict, 2, 0), ArgumentError);
  EXPECT_THROW(DeleteIndex::build(FrequencyDictionary{}), ArgumentError);
}

FrequencyDictionary random_dictionary(std::mt19937_64& rng, std::size_t terms,
                                      std::size_t max_length) {
  FrequencyDictionary dict;
  while (dict.size() < terms) {
    dict.add(to_utf8(testing::random_word(rng, U"abcdeé", 1, max_length)), rng() % 100);
  }
  return dict;
}

TEST(DeleteIndexProperty, EveryDeleteOfEveryTermMapsBack) {
  std::mt19937_64 rng(17);
  const auto dict = random_dictionary(rng, 300, 9);
  const auto index = DeleteIndex::build(dict);
  for (TermId id = 0; id < dict.size(); ++id) {
    const std::u32string& cps = dict.codepoints(id);
    const std::string prefix = to_utf8(cps.substr(0, 7));
    auto keys = generate_deletes(prefix, 2);
    keys.insert(prefix);
    for (const auto& key : keys) {
      const auto ids = index.variants(dict, key);
      ASSERT_TRUE(std::find(ids.begin(), ids.end(), id) != ids.end())
          << dict.entry(id).term << " missing under '" << key << "'";
    }
  }
}

TEST(DeleteIndexProperty, VariantsAreExact) {
  std::mt19937_64 rng(19);
  const auto dict = random_dictionary(rng, 200, 8);
  const auto index = DeleteIndex::build(dict);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string key = to_utf8(testing::random_word(rng, U"abcdeé", 0, 7));
    std::set<std::string> expected;
    for (const auto& e : dict.entries()) {
      const std::string prefix = to_utf8(to_u32(e.term).substr(0, 7));
      auto deletes = generate_deletes(prefix, 2);
      deletes.insert(prefix);
      if (deletes.count(key)) expected.insert(e.term);
    }
    EXPECT_EQ(terms_of(dict, index.variants(dict, key)), expected) << key;
  }
}

TEST(DeleteIndexProperty, NearbyStringsShareADelete) {
  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 2000) {
    const std::u32string t = testing::random_word(rng, U"abcdef", 1, 7);
    const std::u32string s = testing::random_edits(rng, t, U"abcdef", 1 + checked % 2);
    if (s.empty() || s.size() > 7) continue;
    const int d = testing::reference_damerau_levenshtein(s, t);
    if (d > 2) continue;
    ++checked;
    auto ds = generate_deletes(to_utf8(s), d);
    ds.insert(to_utf8(s));
    auto dt = generate_deletes(to_utf8(t), d);
    dt.insert(to_utf8(t));
    std::vector<std::string> common;
    std::set_intersection(ds.begin(), ds.end(), dt.begin(), dt.end(),
                          std::back_inserter(common));
    ASSERT_FALSE(common.empty()) << to_utf8(s) << " vs " << to_utf8(t);
  }
}

TEST(DeleteIndexProperty, BuildIsDeterministic) {
  std::mt19937_64 rng(29);
  const auto dict = random_dictionary(rng, 500, 10);
  const auto a = DeleteIndex::build(dict);
  const auto b = DeleteIndex::build(dict);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.fingerprint(dict), b.fingerprint(dict));
}

TEST(DeleteIndexProperty, FingerprintIgnoresInsertionOrder) {
  std::mt19937_64 rng(31);
  const auto dict = random_dictionary(rng, 300, 8);
  std::vector<DictionaryEntry> shuffled = dict.entries();
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  FrequencyDictionary other;
  for (const auto& e : shuffled) other.add(e.term, e.word_count);
  EXPECT_EQ(DeleteIndex::build(dict).fingerprint(dict),
            DeleteIndex::build(other).fingerprint(other));
  FrequencyDictionary extra = other;
  extra.add("zzzz", 1);
  EXPECT_NE(DeleteIndex::build(dict).fingerprint(dict),
            DeleteIndex::build(extra).fingerprint(extra));
}

}  // namespace
}  // namespace speller
