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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "speller/pipeline.hpp"

namespace speller {

// File names inside an artifact directory.
inline constexpr const char* kDictionaryFile = "dictionary.tsv";
inline constexpr const char* kIndexManifestFile = "index.json";
inline constexpr const char* kModelFile = "model.json";
inline constexpr const char* kBoostFile = "boost.tsv";
inline constexpr const char* kConfigFile = "speller.conf";

/// Service / CLI configuration. Read from `key = value` lines; relative
/// paths resolve against `artifact_dir`.
struct ServiceConfig {
  std::string listen = "127.0.0.1:8080";
  std::filesystem::path artifact_dir = ".";
  std::filesystem::path dictionary = kDictionaryFile;
  std::filesystem::path index_manifest = kIndexManifestFile;
  std::filesystem::path model = kModelFile;
  std::optional<std::filesystem::path> boost;
  std::map<std::string, std::filesystem::path> mwe;  // application -> file
  std::string default_locale = "en";
  std::string default_application = "stock";
  std::optional<double> threshold;
  std::map<std::string, double> application_thresholds;
  std::optional<std::filesystem::path> refresh_log;
  double refresh_interval_seconds = 0;
  std::uint64_t refresh_min_count = 100;

  std::filesystem::path resolve(const std::filesystem::path& p) const;

  // Defaults for an artifact directory: picks up speller.conf, boost.tsv and
  // mwe_<application>.tsv files when present.
  static ServiceConfig for_artifact_dir(const std::filesystem::path& dir);
  // Applies `key = value` lines from `file` on top of the current values.
  void apply_file(const std::filesystem::path& file);
  // SPELLER_LISTEN and SPELLER_ARTIFACT_DIR.
  void apply_environment();
};

struct IndexManifest {
  int max_edit_distance = DeleteIndex::kMaxEditDistance;
  int prefix_length = DeleteIndex::kDefaultPrefixLength;
  std::size_t term_count = 0;
  std::size_t key_count = 0;
  std::size_t posting_count = 0;
  std::string fingerprint;  // hex
};

IndexManifest make_manifest(const FrequencyDictionary& dict,
                            const DeleteIndex& index);
std::string manifest_json(const IndexManifest& manifest,
                          const FrequencyDictionary& dict);
IndexManifest read_manifest(const std::filesystem::path& path);

// Writes dictionary.tsv and index.json into `dir` (created if needed) via
// temp-file + rename.
void write_index_artifacts(const std::filesystem::path& dir,
                           const FrequencyDictionary& dict,
                           const DeleteIndex& index);

// Loads and validates a complete artifact set. The index is rebuilt from the
// dictionary and checked against the manifest fingerprint.
Artifacts load_artifacts(const ServiceConfig& config);

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace speller
