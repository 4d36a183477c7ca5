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

#include "speller/tsv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "speller/errors.hpp"

namespace speller {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

void for_each_tsv_record(const std::filesystem::path& path,
                         const std::function<void(const TsvRecord&)>& visit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string() + ": cannot open file");
  std::string line;
  TsvRecord record;
  while (std::getline(in, line)) {
    ++record.line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    record.fields = split_tabs(line);
    visit(record);
  }
}

void throw_load_error(const std::filesystem::path& path, std::size_t line,
                      std::string_view what) {
  throw LoadError(path.string() + ":" + std::to_string(line) + ": " +
                  std::string(what));
}

std::uint64_t parse_count(const std::filesystem::path& path, std::size_t line,
                          std::string_view field) {
  std::uint64_t value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw_load_error(path, line,
                     "expected a nonnegative integer, got '" +
                         std::string(field) + "'");
  }
  return value;
}

double parse_real(const std::filesystem::path& path, std::size_t line,
                  std::string_view field) {
  double value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw_load_error(path, line,
                     "expected a number, got '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace speller
