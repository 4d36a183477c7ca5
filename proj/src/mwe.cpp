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

#include "speller/mwe.hpp"

#include <algorithm>

#include "speller/errors.hpp"
#include "speller/text.hpp"
#include "speller/tsv.hpp"

namespace speller {

void MweMap::add(std::string_view phrase, std::string_view replacement) {
  std::string key = canonical_query(phrase);
  std::string value = join(split_whitespace(nfc(replacement)), " ");
  if (key.empty() || value.empty()) throw ArgumentError("empty MWE phrase");
  if (canonical_query(value) == key) {
    throw ArgumentError("MWE key maps to itself: '" + key + "'");
  }
  auto [it, inserted] = entries.emplace(key, value);
  if (!inserted && it->second != value) {
    throw ArgumentError("conflicting MWE replacements for '" + key + "'");
  }
  max_key_tokens = std::max(max_key_tokens, split_whitespace(key).size());
}

MweMap load_mwe_map(const std::filesystem::path& file,
                    const std::string& application) {
  MweMap map;
  map.application = application;
  for_each_tsv_record(file, [&](const TsvRecord& r) {
    if (r.fields.size() != 2) {
      throw_load_error(file, r.line, "expected phrase<TAB>replacement");
    }
    try {
      map.add(r.fields[0], r.fields[1]);
    } catch (const ArgumentError& e) {
      throw_load_error(file, r.line, e.what());
    }
  });
  return map;
}

MweRewrite apply_mwe_tokens(std::string_view query, const MweMap& map) {
  MweRewrite out;
  const std::vector<std::string> tokens = split_whitespace(nfc(query));
  if (map.empty()) {
    out.tokens = tokens;
    return out;
  }
  std::vector<std::string> folded;
  folded.reserve(tokens.size());
  for (const auto& t : tokens) folded.push_back(normalize_term(t));

  std::string phrase;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t longest = std::min(map.max_key_tokens, tokens.size() - i);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      phrase.clear();
      for (std::size_t k = 0; k < len; ++k) {
        if (k) phrase.push_back(' ');
        phrase.append(folded[i + k]);
      }
      auto it = map.entries.find(phrase);
      if (it != map.entries.end()) {
        for (auto& t : split_whitespace(it->second)) out.tokens.push_back(std::move(t));
        ++out.replacements;
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      out.tokens.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

std::string apply_mwe(std::string_view query, const MweMap& map) {
  return join(apply_mwe_tokens(query, map).tokens, " ");
}

}  // namespace speller
