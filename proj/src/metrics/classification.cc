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

#include "revforge/metrics/classification.h"

#include "revforge/common/error.h"

namespace revforge::metrics {
namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics ForClass(const EvalReport& r, std::size_t k) {
  const std::size_t tp = r.confusion[k][k];
  const std::size_t predicted = r.confusion[0][k] + r.confusion[1][k];
  const std::size_t actual = r.confusion[k][0] + r.confusion[k][1];
  ClassMetrics m;
  m.precision = Ratio(tp, predicted);
  m.recall = Ratio(tp, actual);
  // 2TP / (2TP + FP + FN), which is 0 exactly when P + R is 0.
  m.f1 = Ratio(2 * tp, predicted + actual);
  return m;
}

std::size_t Index(corpus::Label label) { return label == corpus::Label::kFake ? 1 : 0; }

nlohmann::ordered_json ClassToJson(const ClassMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

ClassMetrics ClassFromJson(const nlohmann::json& j) {
  return {j.at("precision").get<double>(), j.at("recall").get<double>(),
          j.at("f1").get<double>()};
}

}  // namespace

std::size_t EvalReport::Total() const {
  return confusion[0][0] + confusion[0][1] + confusion[1][0] + confusion[1][1];
}

EvalReport ClassificationReport(const std::vector<corpus::Label>& predictions,
                                const std::vector<corpus::Label>& gold,
                                std::string config_id, std::string classifier_id) {
  if (predictions.size() != gold.size()) {
    throw ContractError("classification report: " + std::to_string(predictions.size()) +
                        " predictions for " + std::to_string(gold.size()) +
                        " gold labels");
  }
  if (gold.empty()) throw ContractError("classification report: no items");

  EvalReport report;
  report.config_id = std::move(config_id);
  report.classifier_id = std::move(classifier_id);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++report.confusion[Index(gold[i])][Index(predictions[i])];
  }
  report.n_test = gold.size();
  report.accuracy = Ratio(report.confusion[0][0] + report.confusion[1][1], gold.size());
  report.real = ForClass(report, 0);
  report.fake = ForClass(report, 1);
  return report;
}

nlohmann::ordered_json EvalReportToJson(const EvalReport& r) {
  return {{"config_id", r.config_id},
          {"classifier_id", r.classifier_id},
          {"accuracy", r.accuracy},
          {"real", ClassToJson(r.real)},
          {"fake", ClassToJson(r.fake)},
          {"confusion_matrix",
           {{"rows", "gold"},
            {"columns", "predicted"},
            {"labels", {"real", "fake"}},
            {"counts", {{r.confusion[0][0], r.confusion[0][1]},
                        {r.confusion[1][0], r.confusion[1][1]}}}}},
          {"n_train", r.n_train},
          {"n_test", r.n_test}};
}

EvalReport EvalReportFromJson(const nlohmann::json& j) {
  try {
    EvalReport r;
    r.config_id = j.at("config_id").get<std::string>();
    r.classifier_id = j.at("classifier_id").get<std::string>();
    r.accuracy = j.at("accuracy").get<double>();
    r.real = ClassFromJson(j.at("real"));
    r.fake = ClassFromJson(j.at("fake"));
    const auto& counts = j.at("confusion_matrix").at("counts");
    for (std::size_t g = 0; g < 2; ++g) {
      for (std::size_t p = 0; p < 2; ++p) {
        r.confusion[g][p] = counts.at(g).at(p).get<std::size_t>();
      }
    }
    r.n_train = j.value("n_train", std::size_t{0});
    r.n_test = j.value("n_test", r.Total());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace revforge::metrics
