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

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speller/dictionary.hpp"

namespace speller {

// Every string reachable from `term` by 1..max_edit_distance single
// code-point deletions. The term itself is excluded; "" may be included.
std::set<std::string> generate_deletes(std::string_view term,
                                       int max_edit_distance);

// Code-point form used on the hot path. Appends `term` itself when
// `include_self` is set; the output is sorted and unique.
void collect_deletes(std::u32string_view term, int max_edit_distance,
                     bool include_self, std::vector<std::u32string>& out);

std::uint64_t delete_key_hash(std::u32string_view key);

/// Symmetric-delete permutation index over a frozen dictionary.
///
/// For every term, the first `prefix_length` code points and every string
/// obtainable from them by up to `max_edit_distance` deletions are keyed to
/// the term's id. Keys are stored as 64-bit hashes in a sorted flat table, so
/// `postings()` may return a superset on hash collision; candidate
/// verification downstream removes those. `variants()` is the exact view.
class DeleteIndex {
 public:
  static constexpr int kMaxEditDistance = 2;
  static constexpr int kDefaultPrefixLength = 7;

  DeleteIndex() = default;

  static DeleteIndex build(const FrequencyDictionary& dict,
                           int max_edit_distance = kMaxEditDistance,
                           int prefix_length = kDefaultPrefixLength);

  int max_edit_distance() const { return max_edit_distance_; }
  int prefix_length() const { return prefix_length_; }
  std::size_t key_count() const { return keys_.size(); }
  std::size_t posting_count() const { return postings_.size(); }

  std::span<const TermId> postings(std::u32string_view key) const;

  // Terms whose delete set contains exactly `key`, sorted by id.
  std::vector<TermId> variants(const FrequencyDictionary& dict,
                               std::string_view key) const;

  // Digest of the variant table over term text, independent of TermId order.
  std::uint64_t fingerprint(const FrequencyDictionary& dict) const;

  bool operator==(const DeleteIndex&) const = default;

 private:
  int max_edit_distance_ = kMaxEditDistance;
  int prefix_length_ = kDefaultPrefixLength;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> offsets_;  // keys_.size() + 1 entries
  std::vector<TermId> postings_;
};

}  // namespace speller
