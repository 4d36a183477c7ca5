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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace speller {

struct EvalRecord {
  std::string input;
  std::string gold;
  std::string predicted;
  bool input_was_misspelled = false;  // input != gold
  bool system_changed = false;        // predicted != input

  // Fills both flags by comparing canonical (NFC-lowercase, single-spaced)
  // forms.
  static EvalRecord make(std::string input, std::string gold,
                         std::string predicted);
};

struct EvalCounts {
  std::size_t total = 0;
  std::size_t exact = 0;
  std::size_t misspelled = 0;
  std::size_t misspelled_fixed = 0;
  std::size_t changed = 0;
  std::size_t changed_correct = 0;

  EvalCounts& operator+=(const EvalCounts& other);
  bool operator==(const EvalCounts&) const = default;
};

struct EvalMetrics {
  EvalCounts counts;
  double accuracy = 0;
  std::optional<double> precision;  // absent when nothing was changed
  std::optional<double> recall;     // absent when nothing was misspelled
};

EvalCounts count_records(const std::vector<EvalRecord>& records);
EvalMetrics metrics_from_counts(const EvalCounts& counts);

// Query-level exact-match accuracy, precision over changed queries and
// recall over misspelled queries. Throws ArgumentError on empty input.
EvalMetrics evaluate(const std::vector<EvalRecord>& records);

struct EvalPair {
  std::string input;
  std::string gold;
  std::optional<std::string> predicted;
};

// `input<TAB>gold[<TAB>predicted]` lines.
std::vector<EvalPair> load_eval_pairs(const std::filesystem::path& file);

std::string format_report(const EvalMetrics& metrics);
std::string report_json(const EvalMetrics& metrics);

}  // namespace speller
