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

#ifndef REVFORGE_DETECTOR_SVM_H_
#define REVFORGE_DETECTOR_SVM_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revforge/corpus/review.h"
#include "revforge/detector/featurizer.h"

namespace revforge::detector {

struct SvmHyper {
  double lambda = 1e-4;
  int epochs = 10;
  std::uint64_t seed = 0;

  void Validate() const;  // ConfigError
};

struct TrainingMeta {
  std::uint64_t seed = 0;
  int epochs = 0;
  double lambda = 0.0;
  std::size_t n_train = 0;
  std::string dataset_fingerprint;  // SHA-256 over ids, labels and texts
  // Regularized hinge objective of the returned model after each epoch.
  std::vector<double> objective_trace;
};

struct TrainedDetector {
  Featurizer featurizer;
  std::vector<double> weights;  // dense, featurizer dimension
  double bias = 0.0;
  TrainingMeta meta;
};

// Averaged SGD on lambda/2 |w|^2 + mean(max(0, 1 - y (w.x + b))), with
// y = +1 for Fake. The bias is not regularized. Step size
// 1 / (lambda (t + t0)) with t0 = 1 / lambda; iterate averaging starts with
// the second epoch. Throws ContractError unless both classes are present.
TrainedDetector TrainSvm(const corpus::LabeledDataset& train, const SvmHyper& hyper,
                         const FeaturizerConfig& featurizer_config = {});

// Same, on precomputed feature vectors (y: +1 Fake, -1 Real).
struct SvmSolution {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> objective_trace;
};
SvmSolution TrainSvmOnVectors(const std::vector<SparseVector>& x, const std::vector<int>& y,
                              std::size_t dimension, const SvmHyper& hyper);

double SvmObjective(const std::vector<SparseVector>& x, const std::vector<int>& y,
                    const std::vector<double>& weights, double bias, double lambda);

struct Prediction {
  corpus::Label label = corpus::Label::kReal;
  double margin = 0.0;
};

// Fake iff margin > 0.
Prediction Predict(const TrainedDetector& model, std::string_view text);
std::vector<Prediction> PredictBatch(const TrainedDetector& model,
                                     const std::vector<std::string>& texts);

std::string DatasetFingerprint(const corpus::LabeledDataset& dataset);

// Binary container: magic, format version, JSON header (featurizer config,
// training meta), then bias, weights and idf as little-endian doubles.
void SaveModel(const TrainedDetector& model, const std::filesystem::path& path);
TrainedDetector LoadModel(const std::filesystem::path& path);  // DataError
std::string SerializeModel(const TrainedDetector& model);
TrainedDetector DeserializeModel(std::string_view bytes);

nlohmann::ordered_json TrainingMetaToJson(const TrainingMeta& meta);

}  // namespace revforge::detector

#endif  // REVFORGE_DETECTOR_SVM_H_
