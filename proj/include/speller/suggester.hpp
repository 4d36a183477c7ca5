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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "speller/delete_index.hpp"
#include "speller/dictionary.hpp"

namespace speller {

struct Candidate {
  DictionaryEntry entry;  // statistics snapshot; entry.term is the suggestion
  TermId id = 0;
  int edit_distance = 0;
  std::optional<double> score;

  const std::string& term() const { return entry.term; }
};

struct SuggestOptions {
  // Distance-2 candidates are added only when fewer than this many
  // distance-1 candidates exist.
  int min_candidates = 3;
};

// Verified candidate corrections for `token`. Returns an empty list when the
// token is itself a dictionary term or nothing lies within the index's edit
// distance. Order is unspecified.
std::vector<Candidate> suggest(const DeleteIndex& index,
                               const FrequencyDictionary& dict,
                               std::string_view token,
                               const SuggestOptions& options = {});

}  // namespace speller
