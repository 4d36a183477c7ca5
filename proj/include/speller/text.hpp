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

#include <string>
#include <string_view>
#include <vector>

namespace speller {

// NFC normalization followed by locale-independent lowercasing. Every
// dictionary, index and lookup boundary goes through this.
std::string normalize_term(std::string_view text);

// NFC normalization only (casing preserved).
std::string nfc(std::string_view text);

// Splits on Unicode whitespace, dropping empty pieces. No normalization.
std::vector<std::string> split_whitespace(std::string_view text);

bool has_whitespace(std::string_view text);

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);

// Number of code points in a UTF-8 string.
std::size_t codepoint_length(std::string_view utf8);

// Lowercased, NFC, whitespace-collapsed (single spaces, trimmed).
std::string canonical_query(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace speller
