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

#include "speller/suggester.hpp"

#include <algorithm>

#include "speller/edit_distance.hpp"
#include "speller/errors.hpp"
#include "speller/text.hpp"

namespace speller {
namespace {

// Looks up every delete of the input prefix up to `depth` and verifies each
// newly seen term against the full input.
void scan(const DeleteIndex& index, const FrequencyDictionary& dict,
          std::u32string_view input, int depth, std::vector<char>& seen,
          std::vector<TermId>& seen_ids,
          std::vector<std::vector<TermId>>& by_distance) {
  const int max_distance = index.max_edit_distance();
  const std::u32string_view prefix = input.substr(
      0, std::min<std::size_t>(input.size(), index.prefix_length()));
  thread_local std::vector<std::u32string> keys;
  collect_deletes(prefix, depth, true, keys);
  for (const auto& key : keys) {
    for (TermId id : index.postings(key)) {
      if (seen[id]) continue;
      seen[id] = 1;
      seen_ids.push_back(id);
      const int d =
          damerau_levenshtein_bounded(input, dict.codepoints(id), max_distance);
      if (d >= 1 && d <= max_distance) by_distance[d].push_back(id);
    }
  }
}

}  // namespace

std::vector<Candidate> suggest(const DeleteIndex& index,
                               const FrequencyDictionary& dict,
                               std::string_view token,
                               const SuggestOptions& options) {
  const std::string key = normalize_term(token);
  if (key.empty() || dict.find_normalized(key)) return {};
  const std::u32string input = to_u32(key);
  const int max_distance = index.max_edit_distance();
  if (max_distance < 1) return {};

  thread_local std::vector<char> seen;
  thread_local std::vector<TermId> seen_ids;
  if (seen.size() < dict.size()) seen.assign(dict.size(), 0);
  seen_ids.clear();
  std::vector<std::vector<TermId>> by_distance(max_distance + 1);

  // Every term within distance k shares a delete key with the input at
  // depth <= k, so the depth-1 scan already finds all distance-1 terms.
  scan(index, dict, input, 1, seen, seen_ids, by_distance);
  int reached = 1;
  if (static_cast<int>(by_distance[1].size()) < options.min_candidates &&
      max_distance >= 2) {
    // Terms seen at depth 1 were verified exactly and stay bucketed.
    scan(index, dict, input, max_distance, seen, seen_ids, by_distance);
    reached = max_distance;
  }
  for (TermId id : seen_ids) seen[id] = 0;

  std::vector<Candidate> out;
  for (int d = 1; d <= reached; ++d) {
    for (TermId id : by_distance[d]) {
      out.push_back(Candidate{dict.entry(id), id, d, std::nullopt});
    }
  }
  return out;
}

}  // namespace speller
