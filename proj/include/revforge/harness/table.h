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

#ifndef REVFORGE_HARNESS_TABLE_H_
#define REVFORGE_HARNESS_TABLE_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace revforge::harness {

struct ResultRow {
  std::string config_id;
  std::string classifier_id;
  double accuracy = 0.0;
  double precision_fake = 0.0;
  double recall_fake = 0.0;
  double f1_fake = 0.0;
  double precision_real = 0.0;
  double recall_real = 0.0;
  double f1_real = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

// Requires the exact results.csv header; throws DataError naming the line
// of the first malformed row.
std::vector<ResultRow> ReadResultsCsv(std::istream& in);
std::vector<ResultRow> ReadResultsCsv(const std::filesystem::path& path);

// Accuracy per (configuration, classifier), in first-seen order.
class ComparisonTable {
 public:
  // Throws DataError on a repeated (configuration, classifier) pair.
  explicit ComparisonTable(const std::vector<ResultRow>& rows);

  const std::vector<std::string>& configs() const { return configs_; }
  const std::vector<std::string>& classifiers() const { return classifiers_; }
  std::optional<double> Accuracy(const std::string& config_id,
                                 const std::string& classifier_id) const;
  // "family/X" -> "family/A". Ids without a family have no baseline.
  static std::optional<std::string> BaselineOf(const std::string& config_id);
  // accuracy(config) - accuracy(baseline of config), when both exist.
  std::optional<double> DeltaVsBaseline(const std::string& config_id,
                                        const std::string& classifier_id) const;

  // Fixed-width text: one row per configuration, an accuracy column and a
  // delta-vs-A column per classifier; missing cells show "—".
  std::string Render() const;
  // Long-format CSV "config_id,classifier_id,accuracy"; missing cells are
  // left out.
  std::string PlotData() const;

 private:
  std::vector<std::string> configs_;
  std::vector<std::string> classifiers_;
  std::map<std::pair<std::string, std::string>, double> accuracy_;
};

inline constexpr const char* kMissingCell = "—";

}  // namespace revforge::harness

#endif  // REVFORGE_HARNESS_TABLE_H_
