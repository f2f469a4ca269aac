// Copyright 2026 The revforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revforge/harness/table.h"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "revforge/common/error.h"
#include "revforge/common/text.h"
#include "revforge/corpus/csv.h"
#include "revforge/harness/harness.h"

namespace revforge::harness {
namespace {

double ParseReal(const std::string& field, std::size_t line, const char* column) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || !(value >= 0.0 && value <= 1.0)) {
    throw DataError(fmt::format("line {}: column '{}': expected a number in [0, 1], got '{}'",
                                line, column, field));
  }
  return value;
}

std::size_t ParseCount(const std::string& field, std::size_t line, const char* column) {
  std::size_t value = 0;
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw DataError(fmt::format("line {}: column '{}': expected a count, got '{}'", line,
                                column, field));
  }
  return value;
}

// Display width in terminal columns; every code point counts as one.
std::size_t Width(const std::string& s) { return DecodeUtf8(s).size(); }

std::string Pad(const std::string& s, std::size_t width) {
  return s + std::string(width > Width(s) ? width - Width(s) : 0, ' ');
}

}  // namespace

std::vector<ResultRow> ReadResultsCsv(std::istream& in) {
  corpus::CsvReader reader(in);
  corpus::CsvRecord record;
  if (!reader.Next(record)) throw DataError("results file is empty");
  std::string header;
  for (std::size_t i = 0; i < record.fields.size(); ++i) {
    header += (i ? "," : "") + record.fields[i];
  }
  if (header != ResultsCsvHeader()) {
    throw DataError("line 1: header must be exactly '" + ResultsCsvHeader() + "'");
  }
  std::vector<ResultRow> rows;
  while (reader.Next(record)) {
    const auto& f = record.fields;
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != 11) {
      throw DataError(fmt::format("line {}: expected 11 fields, got {}", record.line, f.size()));
    }
    ResultRow row;
    row.config_id = f[0];
    row.classifier_id = f[1];
    if (row.config_id.empty() || row.classifier_id.empty()) {
      throw DataError(fmt::format("line {}: empty config_id or classifier_id", record.line));
    }
    row.accuracy = ParseReal(f[2], record.line, "accuracy");
    row.precision_fake = ParseReal(f[3], record.line, "precision_fake");
    row.recall_fake = ParseReal(f[4], record.line, "recall_fake");
    row.f1_fake = ParseReal(f[5], record.line, "f1_fake");
    row.precision_real = ParseReal(f[6], record.line, "precision_real");
    row.recall_real = ParseReal(f[7], record.line, "recall_real");
    row.f1_real = ParseReal(f[8], record.line, "f1_real");
    row.n_train = ParseCount(f[9], record.line, "n_train");
    row.n_test = ParseCount(f[10], record.line, "n_test");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> ReadResultsCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open results file " + path.string());
  try {
    return ReadResultsCsv(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

ComparisonTable::ComparisonTable(const std::vector<ResultRow>& rows) {
  for (const ResultRow& row : rows) {
    if (!accuracy_.emplace(std::pair(row.config_id, row.classifier_id), row.accuracy).second) {
      throw DataError("duplicate result row for (" + row.config_id + ", " +
                      row.classifier_id + ")");
    }
    if (std::find(configs_.begin(), configs_.end(), row.config_id) == configs_.end()) {
      configs_.push_back(row.config_id);
    }
    if (std::find(classifiers_.begin(), classifiers_.end(), row.classifier_id) ==
        classifiers_.end()) {
      classifiers_.push_back(row.classifier_id);
    }
  }
}

std::optional<double> ComparisonTable::Accuracy(const std::string& config_id,
                                                const std::string& classifier_id) const {
  const auto it = accuracy_.find({config_id, classifier_id});
  if (it == accuracy_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> ComparisonTable::BaselineOf(const std::string& config_id) {
  const auto slash = config_id.rfind('/');
  if (slash == std::string::npos || slash == 0) return std::nullopt;
  return config_id.substr(0, slash) + "/A";
}

std::optional<double> ComparisonTable::DeltaVsBaseline(const std::string& config_id,
                                                       const std::string& classifier_id) const {
  const auto baseline = BaselineOf(config_id);
  if (!baseline) return std::nullopt;
  const auto base = Accuracy(*baseline, classifier_id);
  const auto value = Accuracy(config_id, classifier_id);
  if (!base || !value) return std::nullopt;
  return *value - *base;
}

std::string ComparisonTable::Render() const {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"config_id"};
  for (const auto& clf : classifiers_) {
    header.push_back(clf);
    header.push_back(clf + " delta_vs_A");
  }
  cells.push_back(header);
  for (const auto& config : configs_) {
    std::vector<std::string> line = {config};
    for (const auto& clf : classifiers_) {
      const auto acc = Accuracy(config, clf);
      const auto delta = DeltaVsBaseline(config, clf);
      line.push_back(acc ? fmt::format("{:.4f}", *acc) : kMissingCell);
      line.push_back(delta ? fmt::format("{:+.4f}", *delta) : kMissingCell);
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], Width(line[c]));
  }
  std::string out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      if (c) out += " | ";
      out += c + 1 == cells[r].size() ? cells[r][c] : Pad(cells[r][c], widths[c]);
    }
    out += '\n';
    if (r == 0) {
      for (std::size_t c = 0; c < widths.size(); ++c) {
        if (c) out += "-+-";
        out += std::string(widths[c], '-');
      }
      out += '\n';
    }
  }
  return out;
}

std::string ComparisonTable::PlotData() const {
  std::string out = "config_id,classifier_id,accuracy\n";
  for (const auto& config : configs_) {
    for (const auto& clf : classifiers_) {
      if (const auto acc = Accuracy(config, clf)) {
        out += fmt::format("{},{},{:.6f}\n", corpus::CsvEscape(config), corpus::CsvEscape(clf),
                           *acc);
      }
    }
  }
  return out;
}

}  // namespace revforge::harness
