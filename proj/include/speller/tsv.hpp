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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace speller {

struct TsvRecord {
  std::size_t line = 0;
  std::vector<std::string_view> fields;
};

// Calls `visit` for every non-blank line not starting with '#'. Trailing
// '\r' is stripped. Throws LoadError when the file cannot be opened.
void for_each_tsv_record(const std::filesystem::path& path,
                         const std::function<void(const TsvRecord&)>& visit);

// Throws LoadError("path:line: what") .
[[noreturn]] void throw_load_error(const std::filesystem::path& path,
                                   std::size_t line, std::string_view what);

std::uint64_t parse_count(const std::filesystem::path& path, std::size_t line,
                          std::string_view field);

double parse_real(const std::filesystem::path& path, std::size_t line,
                  std::string_view field);

std::vector<std::string_view> split_tabs(std::string_view line);

}  // namespace speller
