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

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "speller/pipeline.hpp"

namespace speller::testing {

// Small English vocabulary with word counts, covering the example queries
// used throughout the tests.
const std::vector<std::pair<std::string, std::uint64_t>>& toy_vocabulary();

std::shared_ptr<const FrequencyDictionary> toy_dictionary();

// Ranker trained once per process on corrupted toy queries (fixed seed).
std::shared_ptr<const MlpModel> toy_model();

// MWE map for "stock" with the two compounding examples.
MweMap toy_mwe_map();

Artifacts toy_artifacts();

// dictionary.tsv, index.json, model.json and mwe_stock.tsv.
void write_toy_artifact_dir(const std::filesystem::path& dir);

}  // namespace speller::testing
