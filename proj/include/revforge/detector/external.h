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

#ifndef REVFORGE_DETECTOR_EXTERNAL_H_
#define REVFORGE_DETECTOR_EXTERNAL_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "revforge/corpus/review.h"
#include "revforge/generation/backend_config.h"
#include "revforge/metrics/classification.h"

namespace revforge::detector {

struct ExternalClassifierOptions {
  generation::BackendConfig backend;
  double poll_interval = 2.0;  // seconds between status requests
  double job_timeout = 3600.0;
};

// Adapter for a classifier trained and served elsewhere:
//   POST /v1/classifier/train    JSONL {id, text, label, language} -> {job_id}
//   GET  /v1/classifier/status/{job_id} -> {status: queued|running|succeeded|failed, error?}
//   POST /v1/classifier/predict?job_id={job_id}
//                                JSONL {id, text, language} -> {predictions: [{id, label}]}
// Returns one label per test review, in test order. A job that is not done
// within job_timeout raises JobTimeoutError; a failed job or a prediction
// list that does not cover the test ids exactly once is a ProtocolError.
std::vector<corpus::Label> ExternalPredict(const corpus::LabeledDataset& train,
                                           const corpus::LabeledDataset& test,
                                           const ExternalClassifierOptions& options);

// ExternalPredict followed by a locally computed report.
metrics::EvalReport ExternalClassifier(const corpus::LabeledDataset& train,
                                       const corpus::LabeledDataset& test,
                                       const ExternalClassifierOptions& options,
                                       std::string config_id = {},
                                       std::string classifier_id = {});

ExternalClassifierOptions ExternalClassifierOptionsFromJson(const nlohmann::json& j);
nlohmann::ordered_json ExternalClassifierOptionsToJson(const ExternalClassifierOptions& o);

}  // namespace revforge::detector

#endif  // REVFORGE_DETECTOR_EXTERNAL_H_
