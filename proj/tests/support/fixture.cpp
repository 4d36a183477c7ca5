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

#include "fixture.hpp"

#include <mutex>
#include <random>
#include <sstream>

#include "speller/artifacts.hpp"
#include "speller/text.hpp"
#include "temp_dir.hpp"

namespace speller::testing {

const std::vector<std::pair<std::string, std::uint64_t>>& toy_vocabulary() {
  static const std::vector<std::pair<std::string, std::uint64_t>> vocab = {
      {"museum", 1000},   {"mused", 3},       {"market", 800},
      {"medal", 600},     {"pedal", 150},     {"metal", 700},
      {"meal", 500},      {"model", 800},     {"media", 900},
      {"icon", 900},      {"iron", 400},      {"atlantic", 400},
      {"mackerel", 120},  {"burgundy", 200},  {"background", 1500},
      {"glacier", 300},   {"national", 1200}, {"park", 1100},
      {"dark", 700},      {"bark", 90},       {"and", 5000},
      {"hike", 250},      {"like", 2000},     {"bike", 600},
      {"creative", 700},  {"cloud", 650},     {"photoshop", 900},
      {"express", 500},   {"photo", 1300},    {"shop", 850},
      {"cat", 400},       {"cart", 300},      {"chat", 350},
      {"coat", 320},      {"cut", 500},       {"change", 600},
      {"check", 700},     {"fresh", 400},     {"happiness", 300},
      {"mountain", 900},  {"river", 800},     {"forest", 750},
      {"sunset", 650},    {"beach", 1000},    {"flower", 850},
      {"family", 950},    {"business", 1100}, {"water", 1200},
      {"winter", 700},    {"summer", 750},    {"office", 600},
      {"coffee", 800},    {"city", 1300},     {"night", 1000},
      {"light", 1100},    {"sight", 200},     {"right", 900},
  };
  return vocab;
}

std::shared_ptr<const FrequencyDictionary> toy_dictionary() {
  static const auto dict = [] {
    auto d = std::make_shared<FrequencyDictionary>("en");
    for (const auto& [term, count] : toy_vocabulary()) d->add(term, count);
    return std::shared_ptr<const FrequencyDictionary>(d);
  }();
  return dict;
}

std::shared_ptr<const MlpModel> toy_model() {
  static std::once_flag once;
  static std::shared_ptr<const MlpModel> model;
  std::call_once(once, [] {
    const auto dict = toy_dictionary();
    const auto index = DeleteIndex::build(*dict);
    std::mt19937_64 rng(20240611);
    const auto& vocab = toy_vocabulary();
    // Queries favour common words, as real search traffic does.
    std::vector<double> weights;
    for (const auto& entry : vocab) weights.push_back(static_cast<double>(entry.second));
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::uniform_int_distribution<int> length(1, 2);
    std::ostringstream rows;
    for (int i = 0; i < 2000; ++i) {
      std::vector<std::string> words;
      for (int n = length(rng); n > 0; --n) words.push_back(vocab[pick(rng)].first);
      ErroredQuery q = inject_errors(join(words, " "), rng);
      // Every other query gets a second typo so distance-2 golds are seen.
      if (i % 2 == 1) {
        for (const auto& applied : q.applied) {
          auto& token = q.corrupted_tokens[applied.token_index];
          token = apply_error(token, sample_error_type(rng), rng).text;
        }
      }
      write_training_row(rows, q);
    }
    TempDir dir;
    const auto path = write_text(dir / "train.tsv", rows.str());
    const auto set = build_training_set(load_training_rows(path), *dict, index,
                                        RequestContext{}, FeatureSchema{});
    TrainHyper hyper;
    hyper.seed = 7;
    model = std::make_shared<const MlpModel>(train(set.examples, hyper));
  });
  return model;
}

MweMap toy_mwe_map() {
  MweMap map;
  map.application = "stock";
  map.add("creativecloud", "creative cloud");
  map.add("photo shop express", "photoshop express");
  map.add("photo shop", "photoshop");
  return map;
}

Artifacts toy_artifacts() {
  Artifacts a;
  a.dict = toy_dictionary();
  a.index = std::make_shared<const DeleteIndex>(DeleteIndex::build(*a.dict));
  a.model = toy_model();
  a.mwe.emplace("stock", toy_mwe_map());
  return a;
}

void write_toy_artifact_dir(const std::filesystem::path& dir) {
  const auto dict = toy_dictionary();
  write_index_artifacts(dir, *dict, DeleteIndex::build(*dict));
  save_model(*toy_model(), dir / kModelFile);
  write_text(dir / "mwe_stock.tsv",
             "# wrong phrase\treplacement\n"
             "creativecloud\tcreative cloud\n"
             "photo shop express\tphotoshop express\n"
             "photo shop\tphotoshop\n");
}

}  // namespace speller::testing
