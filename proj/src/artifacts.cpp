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

#include "speller/artifacts.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "speller/errors.hpp"
#include "speller/tsv.hpp"

namespace speller {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

double parse_double_value(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" +
                      value + "'");
  }
}

}  // namespace

std::filesystem::path ServiceConfig::resolve(
    const std::filesystem::path& p) const {
  return p.is_absolute() ? p : artifact_dir / p;
}

ServiceConfig ServiceConfig::for_artifact_dir(const std::filesystem::path& dir) {
  ServiceConfig config;
  config.artifact_dir = dir;
  if (std::filesystem::exists(dir / kBoostFile)) config.boost = kBoostFile;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("mwe_", 0) == 0 && entry.path().extension() == ".tsv") {
      config.mwe[name.substr(4, name.size() - 8)] = name;
    }
  }
  if (std::filesystem::exists(dir / kConfigFile)) {
    config.apply_file(dir / kConfigFile);
    config.artifact_dir = dir;
  }
  return config;
}

void ServiceConfig::apply_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string() + ": cannot open config");
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(file.string() + ":" + std::to_string(number) +
                        ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "listen") {
      listen = value;
    } else if (key == "artifact_dir") {
      artifact_dir = value;
    } else if (key == "dictionary") {
      dictionary = value;
    } else if (key == "index") {
      index_manifest = value;
    } else if (key == "model") {
      model = value;
    } else if (key == "boost") {
      boost = value;
    } else if (key.rfind("mwe.", 0) == 0) {
      mwe[key.substr(4)] = value;
    } else if (key == "default_locale") {
      default_locale = value;
    } else if (key == "default_application") {
      default_application = value;
    } else if (key == "tau") {
      threshold = parse_double_value(key, value);
    } else if (key.rfind("tau.", 0) == 0) {
      application_thresholds[key.substr(4)] = parse_double_value(key, value);
    } else if (key == "refresh.query_log") {
      refresh_log = value;
    } else if (key == "refresh.interval_seconds") {
      refresh_interval_seconds = parse_double_value(key, value);
    } else if (key == "refresh.min_count") {
      refresh_min_count =
          static_cast<std::uint64_t>(parse_double_value(key, value));
    } else {
      throw ConfigError(file.string() + ":" + std::to_string(number) +
                        ": unknown key '" + key + "'");
    }
  }
}

void ServiceConfig::apply_environment() {
  if (const char* v = std::getenv("SPELLER_LISTEN"); v && *v) listen = v;
  if (const char* v = std::getenv("SPELLER_ARTIFACT_DIR"); v && *v) {
    artifact_dir = v;
  }
}

IndexManifest make_manifest(const FrequencyDictionary& dict,
                            const DeleteIndex& index) {
  IndexManifest m;
  m.max_edit_distance = index.max_edit_distance();
  m.prefix_length = index.prefix_length();
  m.term_count = dict.size();
  m.key_count = index.key_count();
  m.posting_count = index.posting_count();
  m.fingerprint = hex64(index.fingerprint(dict));
  return m;
}

std::string manifest_json(const IndexManifest& m,
                          const FrequencyDictionary& dict) {
  nlohmann::ordered_json doc;
  doc["format"] = "speller-index";
  doc["version"] = 1;
  doc["locale"] = dict.locale();
  doc["max_edit_distance"] = m.max_edit_distance;
  doc["prefix_length"] = m.prefix_length;
  doc["term_count"] = m.term_count;
  doc["key_count"] = m.key_count;
  doc["posting_count"] = m.posting_count;
  doc["fingerprint"] = m.fingerprint;
  doc["max_counts"] = {{"word_count", dict.max_counts().word_count},
                       {"asset_frequency", dict.max_counts().asset_frequency},
                       {"download_count", dict.max_counts().download_count}};
  return doc.dump(2) + "\n";
}

IndexManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string() + ": cannot open index manifest");
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.at("format") != "speller-index" || doc.at("version") != 1) {
      throw LoadError(path.string() + ": unsupported index manifest");
    }
    IndexManifest m;
    m.max_edit_distance = doc.at("max_edit_distance").get<int>();
    m.prefix_length = doc.at("prefix_length").get<int>();
    m.term_count = doc.at("term_count").get<std::size_t>();
    m.key_count = doc.at("key_count").get<std::size_t>();
    m.posting_count = doc.at("posting_count").get<std::size_t>();
    m.fingerprint = doc.at("fingerprint").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(path.string() + ": malformed index manifest: " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(tmp.string() + ": cannot write");
    out << contents;
    if (!out) throw ConfigError(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

void write_index_artifacts(const std::filesystem::path& dir,
                           const FrequencyDictionary& dict,
                           const DeleteIndex& index) {
  std::filesystem::create_directories(dir);
  std::ostringstream tsv;
  dict.write_artifact(tsv);
  write_file_atomic(dir / kDictionaryFile, tsv.str());
  write_file_atomic(dir / kIndexManifestFile,
                    manifest_json(make_manifest(dict, index), dict));
}

Artifacts load_artifacts(const ServiceConfig& config) {
  Artifacts a;
  auto dict = std::make_shared<FrequencyDictionary>(
      FrequencyDictionary::read_artifact(config.resolve(config.dictionary)));
  IndexManifest manifest;
  const auto manifest_path = config.resolve(config.index_manifest);
  if (std::filesystem::exists(manifest_path)) manifest = read_manifest(manifest_path);
  auto index = std::make_shared<const DeleteIndex>(
      DeleteIndex::build(*dict, manifest.max_edit_distance, manifest.prefix_length));
  if (!manifest.fingerprint.empty() &&
      manifest.fingerprint != hex64(index->fingerprint(*dict))) {
    throw ConfigError(manifest_path.string() +
                      ": index fingerprint does not match the dictionary");
  }
  a.dict = std::move(dict);
  a.index = std::move(index);
  a.model = std::make_shared<const MlpModel>(load_model(config.resolve(config.model)));
  for (const auto& [app, file] : config.mwe) {
    a.mwe.emplace(app, load_mwe_map(config.resolve(file), app));
  }
  if (config.boost) a.boost = load_boost_config(config.resolve(*config.boost));
  if (config.threshold) a.boost.threshold = *config.threshold;
  for (const auto& [app, t] : config.application_thresholds) {
    a.boost.application_thresholds[app] = t;
  }
  a.validate();
  return a;
}

}  // namespace speller
