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

#include "speller/dictionary.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "speller/errors.hpp"
#include "speller/text.hpp"
#include "speller/tsv.hpp"

namespace speller {

FrequencyDictionary::FrequencyDictionary(std::string locale)
    : locale_(std::move(locale)) {}

TermId FrequencyDictionary::add(std::string_view term,
                                std::uint64_t word_count,
                                std::uint64_t asset_frequency,
                                std::uint64_t download_count) {
  std::string key = normalize_term(term);
  if (key.empty()) throw ArgumentError("dictionary term is empty");
  if (has_whitespace(key)) {
    throw ArgumentError("dictionary term contains whitespace: '" + key + "'");
  }
  TermId id;
  if (auto it = ids_.find(key); it != ids_.end()) {
    id = it->second;
    DictionaryEntry& e = entries_[id];
    e.word_count += word_count;
    e.asset_frequency += asset_frequency;
    e.download_count += download_count;
  } else {
    id = static_cast<TermId>(entries_.size());
    codepoints_.push_back(to_u32(key));
    entries_.push_back({key, word_count, asset_frequency, download_count});
    ids_.emplace(std::move(key), id);
  }
  const DictionaryEntry& e = entries_[id];
  max_counts_.word_count = std::max(max_counts_.word_count, e.word_count);
  max_counts_.asset_frequency =
      std::max(max_counts_.asset_frequency, e.asset_frequency);
  max_counts_.download_count =
      std::max(max_counts_.download_count, e.download_count);
  return id;
}

bool FrequencyDictionary::add_stats(std::string_view term,
                                    std::uint64_t asset_frequency,
                                    std::uint64_t download_count) {
  auto id = find_id(term);
  if (!id) return false;
  DictionaryEntry& e = entries_[*id];
  e.asset_frequency += asset_frequency;
  e.download_count += download_count;
  max_counts_.asset_frequency =
      std::max(max_counts_.asset_frequency, e.asset_frequency);
  max_counts_.download_count =
      std::max(max_counts_.download_count, e.download_count);
  return true;
}

void FrequencyDictionary::set_word_count(TermId id, std::uint64_t word_count) {
  entries_.at(id).word_count = word_count;
  recompute_maxima();
}

void FrequencyDictionary::recompute_maxima() {
  max_counts_ = {};
  for (const auto& e : entries_) {
    max_counts_.word_count = std::max(max_counts_.word_count, e.word_count);
    max_counts_.asset_frequency =
        std::max(max_counts_.asset_frequency, e.asset_frequency);
    max_counts_.download_count =
        std::max(max_counts_.download_count, e.download_count);
  }
}

std::optional<TermId> FrequencyDictionary::find_normalized(
    std::string_view key) const {
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  return std::nullopt;
}

std::optional<TermId> FrequencyDictionary::find_id(
    std::string_view token) const {
  return find_normalized(normalize_term(token));
}

const DictionaryEntry* FrequencyDictionary::find(std::string_view token) const {
  auto id = find_id(token);
  return id ? &entries_[*id] : nullptr;
}

bool FrequencyDictionary::contains(std::string_view token) const {
  return find_id(token).has_value();
}

std::vector<TermId> FrequencyDictionary::sorted_ids() const {
  std::vector<TermId> ids(entries_.size());
  for (TermId i = 0; i < ids.size(); ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(), [this](TermId a, TermId b) {
    return entries_[a].term < entries_[b].term;
  });
  return ids;
}

void FrequencyDictionary::write_artifact(std::ostream& out) const {
  out << "# speller-dictionary v1\n";
  out << "# locale\t" << locale_ << "\n";
  out << "# max_counts\t" << max_counts_.word_count << "\t"
      << max_counts_.asset_frequency << "\t" << max_counts_.download_count
      << "\n";
  for (TermId id : sorted_ids()) {
    const auto& e = entries_[id];
    out << e.term << '\t' << e.word_count << '\t' << e.asset_frequency << '\t'
        << e.download_count << '\n';
  }
}

FrequencyDictionary FrequencyDictionary::read_artifact(
    const std::filesystem::path& path) {
  std::string locale = "en";
  {
    std::ifstream in(path);
    if (!in) throw LoadError(path.string() + ": cannot open file");
    std::string line;
    std::getline(in, line);
    if (line != "# speller-dictionary v1") {
      throw LoadError(path.string() + ": not a dictionary artifact");
    }
    std::getline(in, line);
    const std::string tag = "# locale\t";
    if (line.rfind(tag, 0) == 0) locale = line.substr(tag.size());
  }
  FrequencyDictionary dict(locale);
  for_each_tsv_record(path, [&](const TsvRecord& r) {
    if (r.fields.size() != 4) throw_load_error(path, r.line, "expected 4 fields");
    try {
      dict.add(r.fields[0], parse_count(path, r.line, r.fields[1]),
               parse_count(path, r.line, r.fields[2]),
               parse_count(path, r.line, r.fields[3]));
    } catch (const ArgumentError& e) {
      throw_load_error(path, r.line, e.what());
    }
  });
  if (dict.empty()) throw ConfigError(path.string() + ": dictionary is empty");
  return dict;
}

FrequencyDictionary load_dictionary(
    const std::filesystem::path& lexicon_file,
    const std::vector<std::filesystem::path>& custom_vocab_files,
    const std::optional<std::filesystem::path>& stats_file,
    const std::string& locale) {
  FrequencyDictionary dict(locale);
  auto read_vocab = [&dict](const std::filesystem::path& path) {
    for_each_tsv_record(path, [&](const TsvRecord& r) {
      if (r.fields.size() != 2) {
        throw_load_error(path, r.line, "expected term<TAB>word_count");
      }
      const std::uint64_t count = parse_count(path, r.line, r.fields[1]);
      try {
        dict.add(r.fields[0], count);
      } catch (const ArgumentError& e) {
        throw_load_error(path, r.line, e.what());
      }
    });
  };
  read_vocab(lexicon_file);
  for (const auto& path : custom_vocab_files) read_vocab(path);
  if (stats_file) {
    const auto& path = *stats_file;
    for_each_tsv_record(path, [&](const TsvRecord& r) {
      if (r.fields.size() != 3) {
        throw_load_error(path, r.line,
                         "expected term<TAB>asset_frequency<TAB>download_count");
      }
      if (r.fields[0].empty()) throw_load_error(path, r.line, "empty term");
      dict.add_stats(r.fields[0], parse_count(path, r.line, r.fields[1]),
                     parse_count(path, r.line, r.fields[2]));
    });
  }
  if (dict.empty()) {
    throw ConfigError("dictionary sources contain no terms");
  }
  return dict;
}

}  // namespace speller
