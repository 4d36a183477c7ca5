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

#include "speller/delete_index.hpp"

#include <algorithm>
#include <utility>

#include "speller/errors.hpp"
#include "speller/text.hpp"

namespace speller {
namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xffu;
    h *= kFnvPrime;
  }
  return h;
}

void deletes_rec(std::u32string& current, int depth,
                 std::vector<std::u32string>& out) {
  if (depth == 0 || current.empty()) return;
  for (std::size_t i = 0; i < current.size(); ++i) {
    // Skip deleting the second of a run; it yields the same string.
    if (i > 0 && current[i] == current[i - 1]) continue;
    std::u32string next = current;
    next.erase(i, 1);
    out.push_back(next);
    deletes_rec(next, depth - 1, out);
  }
}

bool is_subsequence(std::u32string_view needle, std::u32string_view hay) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < hay.size() && j < needle.size(); ++i) {
    if (hay[i] == needle[j]) ++j;
  }
  return j == needle.size();
}

}  // namespace

void collect_deletes(std::u32string_view term, int max_edit_distance,
                     bool include_self, std::vector<std::u32string>& out) {
  out.clear();
  std::u32string current(term);
  if (include_self) out.push_back(current);
  deletes_rec(current, max_edit_distance, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

std::set<std::string> generate_deletes(std::string_view term,
                                       int max_edit_distance) {
  if (max_edit_distance < 0 || max_edit_distance > DeleteIndex::kMaxEditDistance) {
    throw ArgumentError("max_edit_distance must be in [0, 2]");
  }
  std::vector<std::u32string> deletes;
  collect_deletes(to_u32(term), max_edit_distance, false, deletes);
  std::set<std::string> out;
  for (const auto& d : deletes) out.insert(to_utf8(d));
  out.erase(std::string(term));
  return out;
}

std::uint64_t delete_key_hash(std::u32string_view key) {
  std::uint64_t h = kFnvOffset;
  for (char32_t c : key) {
    h ^= static_cast<std::uint64_t>(c);
    h *= kFnvPrime;
  }
  // Length terminator keeps "" distinct from the offset basis.
  return fnv_mix(h, key.size());
}

DeleteIndex DeleteIndex::build(const FrequencyDictionary& dict,
                               int max_edit_distance, int prefix_length) {
  if (max_edit_distance < 0 || max_edit_distance > kMaxEditDistance) {
    throw ArgumentError("max_edit_distance must be in [0, 2]");
  }
  if (prefix_length < 1) throw ArgumentError("prefix_length must be >= 1");
  if (dict.empty()) throw ArgumentError("cannot index an empty dictionary");

  DeleteIndex index;
  index.max_edit_distance_ = max_edit_distance;
  index.prefix_length_ = prefix_length;

  std::vector<std::pair<std::uint64_t, TermId>> pairs;
  pairs.reserve(dict.size() * 8);
  std::vector<std::u32string> deletes;
  std::vector<std::uint64_t> hashes;
  for (TermId id = 0; id < dict.size(); ++id) {
    const std::u32string& cps = dict.codepoints(id);
    const std::u32string_view prefix(
        cps.data(), std::min<std::size_t>(cps.size(), prefix_length));
    collect_deletes(prefix, max_edit_distance, true, deletes);
    hashes.clear();
    for (const auto& d : deletes) hashes.push_back(delete_key_hash(d));
    std::sort(hashes.begin(), hashes.end());
    hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
    for (auto h : hashes) pairs.emplace_back(h, id);
  }
  std::sort(pairs.begin(), pairs.end());

  index.postings_.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == 0 || pairs[i].first != pairs[i - 1].first) {
      index.keys_.push_back(pairs[i].first);
      index.offsets_.push_back(static_cast<std::uint32_t>(i));
    }
    index.postings_.push_back(pairs[i].second);
  }
  index.offsets_.push_back(static_cast<std::uint32_t>(pairs.size()));
  return index;
}

std::span<const TermId> DeleteIndex::postings(std::u32string_view key) const {
  const std::uint64_t h = delete_key_hash(key);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), h);
  if (it == keys_.end() || *it != h) return {};
  const auto k = static_cast<std::size_t>(it - keys_.begin());
  return std::span<const TermId>(postings_.data() + offsets_[k],
                                 offsets_[k + 1] - offsets_[k]);
}

std::vector<TermId> DeleteIndex::variants(const FrequencyDictionary& dict,
                                          std::string_view key) const {
  const std::u32string k = to_u32(key);
  std::vector<TermId> out;
  for (TermId id : postings(k)) {
    if (id >= dict.size()) continue;
    const std::u32string& cps = dict.codepoints(id);
    const std::u32string_view prefix(
        cps.data(), std::min<std::size_t>(cps.size(), prefix_length_));
    if (k.size() <= prefix.size() &&
        prefix.size() - k.size() <= static_cast<std::size_t>(max_edit_distance_) &&
        is_subsequence(k, prefix)) {
      out.push_back(id);
    }
  }
  return out;
}

std::uint64_t DeleteIndex::fingerprint(const FrequencyDictionary& dict) const {
  std::vector<std::uint64_t> term_hashes(dict.size());
  for (TermId id = 0; id < dict.size(); ++id) {
    term_hashes[id] = delete_key_hash(dict.codepoints(id));
  }
  std::uint64_t h = kFnvOffset;
  h = fnv_mix(h, static_cast<std::uint64_t>(max_edit_distance_));
  h = fnv_mix(h, static_cast<std::uint64_t>(prefix_length_));
  std::vector<std::uint64_t> bucket;
  for (std::size_t k = 0; k < keys_.size(); ++k) {
    h = fnv_mix(h, keys_[k]);
    bucket.clear();
    for (auto i = offsets_[k]; i < offsets_[k + 1]; ++i) {
      bucket.push_back(term_hashes[postings_[i]]);
    }
    std::sort(bucket.begin(), bucket.end());
    for (auto b : bucket) h = fnv_mix(h, b);
  }
  return h;
}

}  // namespace speller
