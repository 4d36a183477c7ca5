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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace speller {

using TermId = std::uint32_t;

struct DictionaryEntry {
  std::string term;
  std::uint64_t word_count = 0;
  std::uint64_t asset_frequency = 0;
  std::uint64_t download_count = 0;

  bool operator==(const DictionaryEntry&) const = default;
};

struct CountMaxima {
  std::uint64_t word_count = 0;
  std::uint64_t asset_frequency = 0;
  std::uint64_t download_count = 0;

  bool operator==(const CountMaxima&) const = default;
};

/// The universe of correctly spelled terms plus their behavioral counters.
///
/// Terms are stored NFC-lowercased and addressed by a dense TermId that is
/// stable for the lifetime of the dictionary. Field maxima are kept equal to
/// the true maxima over all entries after every mutation.
class FrequencyDictionary {
 public:
  explicit FrequencyDictionary(std::string locale = "en");

  // Inserts the term, or sums the counters into the existing entry.
  // Throws ArgumentError when the normalized term is empty or has whitespace.
  TermId add(std::string_view term, std::uint64_t word_count,
             std::uint64_t asset_frequency = 0,
             std::uint64_t download_count = 0);

  // Sums asset/download counters into an existing term. Returns false when
  // the term is not in the dictionary.
  bool add_stats(std::string_view term, std::uint64_t asset_frequency,
                 std::uint64_t download_count);

  void set_word_count(TermId id, std::uint64_t word_count);

  std::optional<TermId> find_id(std::string_view token) const;
  // Lookup of an already-normalized key.
  std::optional<TermId> find_normalized(std::string_view key) const;
  const DictionaryEntry* find(std::string_view token) const;
  bool contains(std::string_view token) const;

  const DictionaryEntry& entry(TermId id) const { return entries_[id]; }
  const std::u32string& codepoints(TermId id) const { return codepoints_[id]; }
  const std::vector<DictionaryEntry>& entries() const { return entries_; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::string& locale() const { return locale_; }
  const CountMaxima& max_counts() const { return max_counts_; }

  // Ids ordered by term (byte-wise), for deterministic output.
  std::vector<TermId> sorted_ids() const;

  // Artifact form: sorted `term<TAB>word_count<TAB>asset<TAB>download`.
  void write_artifact(std::ostream& out) const;
  static FrequencyDictionary read_artifact(const std::filesystem::path& path);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  void recompute_maxima();

  std::string locale_;
  std::vector<DictionaryEntry> entries_;
  std::vector<std::u32string> codepoints_;
  std::unordered_map<std::string, TermId, Hash, std::equal_to<>> ids_;
  CountMaxima max_counts_;
};

// Reads the lexicon and custom vocabularies (`term<TAB>word_count`) and an
// optional stats file (`term<TAB>asset_frequency<TAB>download_count`).
// Colliding terms have their counters summed. Stats for terms absent from
// every vocabulary are ignored.
FrequencyDictionary load_dictionary(
    const std::filesystem::path& lexicon_file,
    const std::vector<std::filesystem::path>& custom_vocab_files,
    const std::optional<std::filesystem::path>& stats_file,
    const std::string& locale);

}  // namespace speller
