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

#include "speller/eval.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "speller/errors.hpp"
#include "speller/text.hpp"
#include "speller/tsv.hpp"

namespace speller {

EvalRecord EvalRecord::make(std::string input, std::string gold,
                            std::string predicted) {
  EvalRecord r{std::move(input), std::move(gold), std::move(predicted)};
  const std::string in = canonical_query(r.input);
  r.input_was_misspelled = in != canonical_query(r.gold);
  r.system_changed = canonical_query(r.predicted) != in;
  return r;
}

EvalCounts& EvalCounts::operator+=(const EvalCounts& other) {
  total += other.total;
  exact += other.exact;
  misspelled += other.misspelled;
  misspelled_fixed += other.misspelled_fixed;
  changed += other.changed;
  changed_correct += other.changed_correct;
  return *this;
}

EvalCounts count_records(const std::vector<EvalRecord>& records) {
  EvalCounts c;
  for (const auto& r : records) {
    const bool correct = canonical_query(r.predicted) == canonical_query(r.gold);
    ++c.total;
    c.exact += correct;
    if (r.input_was_misspelled) {
      ++c.misspelled;
      c.misspelled_fixed += correct;
    }
    if (r.system_changed) {
      ++c.changed;
      c.changed_correct += correct;
    }
  }
  return c;
}

EvalMetrics metrics_from_counts(const EvalCounts& counts) {
  if (counts.total == 0) throw ArgumentError("no evaluation records");
  EvalMetrics m;
  m.counts = counts;
  m.accuracy = static_cast<double>(counts.exact) / static_cast<double>(counts.total);
  if (counts.changed > 0) {
    m.precision = static_cast<double>(counts.changed_correct) /
                  static_cast<double>(counts.changed);
  }
  if (counts.misspelled > 0) {
    m.recall = static_cast<double>(counts.misspelled_fixed) /
               static_cast<double>(counts.misspelled);
  }
  return m;
}

EvalMetrics evaluate(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw ArgumentError("no evaluation records");
  return metrics_from_counts(count_records(records));
}

std::vector<EvalPair> load_eval_pairs(const std::filesystem::path& file) {
  std::vector<EvalPair> pairs;
  for_each_tsv_record(file, [&](const TsvRecord& r) {
    if (r.fields.size() < 2 || r.fields.size() > 3) {
      throw_load_error(file, r.line, "expected input<TAB>gold[<TAB>predicted]");
    }
    EvalPair p{std::string(r.fields[0]), std::string(r.fields[1]), std::nullopt};
    if (r.fields.size() == 3) p.predicted = std::string(r.fields[2]);
    pairs.push_back(std::move(p));
  });
  return pairs;
}

std::string format_report(const EvalMetrics& m) {
  auto pct = [](std::optional<double> v) {
    if (!v) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "metric     value   count\n";
  out << "accuracy   " << pct(m.accuracy) << "  " << m.counts.exact << "/"
      << m.counts.total << "\n";
  out << "precision  " << pct(m.precision) << "  " << m.counts.changed_correct
      << "/" << m.counts.changed << "\n";
  out << "recall     " << pct(m.recall) << "  " << m.counts.misspelled_fixed
      << "/" << m.counts.misspelled << "\n";
  return out.str();
}

std::string report_json(const EvalMetrics& m) {
  nlohmann::json doc;
  doc["accuracy"] = m.accuracy;
  doc["precision"] = m.precision ? nlohmann::json(*m.precision) : nlohmann::json();
  doc["recall"] = m.recall ? nlohmann::json(*m.recall) : nlohmann::json();
  doc["counts"] = {{"total", m.counts.total},
                   {"exact", m.counts.exact},
                   {"misspelled", m.counts.misspelled},
                   {"misspelled_fixed", m.counts.misspelled_fixed},
                   {"changed", m.counts.changed},
                   {"changed_correct", m.counts.changed_correct}};
  return doc.dump();
}

}  // namespace speller
