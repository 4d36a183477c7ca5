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
#include <string>
#include <string_view>
#include <vector>

namespace speller {

/// Per-application phrase rewrites for compounding / decompounding errors,
/// e.g. "creativecloud" -> "creative cloud".
struct MweMap {
  std::string application;
  // canonical (NFC-lowercase, single-spaced) phrase -> replacement phrase
  std::map<std::string, std::string, std::less<>> entries;
  std::size_t max_key_tokens = 0;

  // Throws ArgumentError for empty phrases, self-maps and conflicting
  // duplicates.
  void add(std::string_view phrase, std::string_view replacement);
  bool empty() const { return entries.empty(); }
};

// Reads `wrong phrase<TAB>replacement phrase` lines.
MweMap load_mwe_map(const std::filesystem::path& file,
                    const std::string& application);

struct MweRewrite {
  std::vector<std::string> tokens;
  std::size_t replacements = 0;
};

// Greedy longest match, left to right, one pass. Keys match whole tokens
// (a single-token key splits a compound). Unmatched tokens keep their
// original spelling.
MweRewrite apply_mwe_tokens(std::string_view query, const MweMap& map);

std::string apply_mwe(std::string_view query, const MweMap& map);

}  // namespace speller
