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

#include "revforge/detector/external.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <thread>

#include "revforge/common/error.h"
#include "revforge/common/logging.h"
#include "revforge/generation/http_transport.h"

namespace revforge::detector {
namespace {

std::string ToJsonLines(const corpus::LabeledDataset& ds, bool with_labels) {
  std::string out;
  for (const corpus::Review& r : ds.reviews) {
    nlohmann::ordered_json line = {{"id", r.id}, {"text", r.text}};
    if (with_labels) line["label"] = corpus::LabelName(r.label);
    line["language"] = r.language.empty() ? ds.language : r.language;
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string RequireString(const nlohmann::json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) {
    throw ProtocolError(std::string(what) + " response lacks string field '" + key + "'",
                        Excerpt(j.dump()));
  }
  return j.at(key).get<std::string>();
}

}  // namespace

std::vector<corpus::Label> ExternalPredict(const corpus::LabeledDataset& train,
                                           const corpus::LabeledDataset& test,
                                           const ExternalClassifierOptions& options) {
  if (test.empty()) throw ContractError("external classifier: empty test set");
  const generation::HttpJsonClient client(options.backend);

  const nlohmann::json started = client.PostRaw("/v1/classifier/train",
                                                ToJsonLines(train, true), "application/x-ndjson");
  const std::string job_id = RequireString(started, "job_id", "train");
  Log().info("external classifier job {} started with {} reviews", job_id, train.size());

  const auto begin = std::chrono::steady_clock::now();
  for (;;) {
    const nlohmann::json status = client.GetJson("/v1/classifier/status/" + job_id);
    const std::string state = RequireString(status, "status", "status");
    if (state == "succeeded") break;
    if (state == "failed") {
      throw ProtocolError("classifier job " + job_id + " failed: " +
                              status.value("error", std::string("no reason given")),
                          Excerpt(status.dump()));
    }
    if (state != "queued" && state != "running") {
      throw ProtocolError("classifier job " + job_id + " reported unknown status '" + state +
                              "'",
                          Excerpt(status.dump()));
    }
    const double waited =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    if (waited >= options.job_timeout) throw JobTimeoutError(job_id, waited);
    std::this_thread::sleep_for(std::chrono::duration<double>(
        std::min(options.poll_interval, options.job_timeout - waited)));
  }

  const nlohmann::json answer = client.PostRaw("/v1/classifier/predict?job_id=" + job_id,
                                               ToJsonLines(test, false),
                                               "application/x-ndjson");
  if (!answer.is_object() || !answer.contains("predictions") ||
      !answer.at("predictions").is_array()) {
    throw ProtocolError("predict response lacks a 'predictions' array", Excerpt(answer.dump()));
  }
  std::map<std::string, corpus::Label> by_id;
  for (const auto& p : answer.at("predictions")) {
    const std::string id = RequireString(p, "id", "predict");
    const std::string label = RequireString(p, "label", "predict");
    corpus::Label parsed;
    if (label == "real") {
      parsed = corpus::Label::kReal;
    } else if (label == "fake") {
      parsed = corpus::Label::kFake;
    } else {
      throw ProtocolError("predict response has label '" + label + "' for id " + id,
                          Excerpt(p.dump()));
    }
    if (!by_id.emplace(id, parsed).second) {
      throw ProtocolError("predict response repeats id " + id, Excerpt(answer.dump()));
    }
  }
  std::vector<corpus::Label> labels;
  labels.reserve(test.size());
  for (const corpus::Review& r : test.reviews) {
    const auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      throw ProtocolError("predict response has no label for id " + r.id,
                          Excerpt(answer.dump()));
    }
    labels.push_back(it->second);
  }
  if (by_id.size() != test.size()) {
    throw ProtocolError("predict response labels ids outside the test set",
                        Excerpt(answer.dump()));
  }
  return labels;
}

metrics::EvalReport ExternalClassifier(const corpus::LabeledDataset& train,
                                       const corpus::LabeledDataset& test,
                                       const ExternalClassifierOptions& options,
                                       std::string config_id, std::string classifier_id) {
  const std::vector<corpus::Label> predicted = ExternalPredict(train, test, options);
  std::vector<corpus::Label> gold;
  gold.reserve(test.size());
  for (const corpus::Review& r : test.reviews) gold.push_back(r.label);
  metrics::EvalReport report = metrics::ClassificationReport(
      predicted, gold, std::move(config_id), std::move(classifier_id));
  report.n_train = train.size();
  return report;
}

ExternalClassifierOptions ExternalClassifierOptionsFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("external classifier config must be an object");
  ExternalClassifierOptions o;
  nlohmann::json backend = nlohmann::json::object();
  for (const auto& [key, value] : j.items()) {
    if (key == "poll_interval" || key == "job_timeout") {
      if (!value.is_number()) throw ConfigError(key + " must be a number");
      (key == "poll_interval" ? o.poll_interval : o.job_timeout) = value.get<double>();
    } else {
      backend[key] = value;
    }
  }
  o.backend = generation::BackendConfigFromJson(backend);
  if (o.backend.IsMock()) {
    throw ConfigError("external classifier needs an http(s) endpoint");
  }
  if (!(o.poll_interval > 0.0)) throw ConfigError("poll_interval must be > 0");
  if (!(o.job_timeout > 0.0)) throw ConfigError("job_timeout must be > 0");
  return o;
}

nlohmann::ordered_json ExternalClassifierOptionsToJson(const ExternalClassifierOptions& o) {
  nlohmann::ordered_json j = generation::BackendConfigToJson(o.backend);
  j["poll_interval"] = o.poll_interval;
  j["job_timeout"] = o.job_timeout;
  return j;
}

}  // namespace revforge::detector
