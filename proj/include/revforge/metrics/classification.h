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

#ifndef REVFORGE_METRICS_CLASSIFICATION_H_
#define REVFORGE_METRICS_CLASSIFICATION_H_

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "revforge/corpus/review.h"

namespace revforge::metrics {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::string config_id;
  std::string classifier_id;
  double accuracy = 0.0;
  ClassMetrics real;
  ClassMetrics fake;
  // confusion[gold][predicted], index 0 = real, 1 = fake.
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  std::size_t n_train = 0;
  std::size_t n_test = 0;

  std::size_t Total() const;
};

// Throws ContractError when the lists differ in length or are empty.
// Ratios with a zero denominator are reported as 0.
EvalReport ClassificationReport(const std::vector<corpus::Label>& predictions,
                                const std::vector<corpus::Label>& gold,
                                std::string config_id = {}, std::string classifier_id = {});

nlohmann::ordered_json EvalReportToJson(const EvalReport& report);
EvalReport EvalReportFromJson(const nlohmann::json& j);

}  // namespace revforge::metrics

#endif  // REVFORGE_METRICS_CLASSIFICATION_H_
