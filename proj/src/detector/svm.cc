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

#include "revforge/detector/svm.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "revforge/common/digest.h"
#include "revforge/common/error.h"
#include "revforge/common/hash.h"

namespace revforge::detector {
namespace {

constexpr char kMagic[8] = {'R', 'F', 'G', 'S', 'V', 'M', '\0', '\n'};
constexpr std::uint32_t kFormatVersion = 1;

// Averaged SGD with lazily scaled weight vectors: the working weights are
// w / w_div and the average is (a + w_frac * w) / a_div, so the
// regularization shrink and the averaging step cost O(1) per example.
class AsgdState {
 public:
  AsgdState(std::size_t dimension, double lambda)
      : w_(dimension, 0.0), a_(dimension, 0.0), lambda_(lambda) {}

  double Margin(const SparseVector& x) const { return x.Dot(w_) / w_div_ + bias_; }

  void Step(const SparseVector& x, int y, double eta, double mu) {
    if (w_div_ > 1e5 || a_div_ > 1e5) Renormalize();
    const double z = y * Margin(x);
    w_div_ /= 1.0 - eta * lambda_;
    const double d = z < 1.0 ? 1.0 : 0.0;
    if (d != 0.0) {
      const double step = eta * d * y * w_div_;
      for (const auto& [i, v] : x.entries) w_[i] += step * v;
      if (mu > 0.0 && mu < 1.0) {
        for (const auto& [i, v] : x.entries) a_[i] -= w_frac_ * step * v;
      }
    }
    if (mu >= 1.0) {
      std::fill(a_.begin(), a_.end(), 0.0);
      a_div_ = w_div_;
      w_frac_ = 1.0;
    } else if (mu > 0.0) {
      a_div_ /= 1.0 - mu;
      w_frac_ += mu * a_div_ / w_div_;
    }
    bias_ += eta * d * y;
    avg_bias_ += mu * (bias_ - avg_bias_);
  }

  std::vector<double> AveragedWeights() const {
    std::vector<double> out(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) out[i] = (a_[i] + w_frac_ * w_[i]) / a_div_;
    return out;
  }
  std::vector<double> CurrentWeights() const {
    std::vector<double> out(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) out[i] = w_[i] / w_div_;
    return out;
  }
  double averaged_bias() const { return avg_bias_; }
  double bias() const { return bias_; }

 private:
  void Renormalize() {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      a_[i] = (a_[i] + w_frac_ * w_[i]) / a_div_;
      w_[i] /= w_div_;
    }
    w_div_ = 1.0;
    a_div_ = 1.0;
    w_frac_ = 0.0;
  }

  std::vector<double> w_;
  std::vector<double> a_;
  double w_div_ = 1.0;
  double a_div_ = 1.0;
  double w_frac_ = 0.0;
  double bias_ = 0.0;
  double avg_bias_ = 0.0;
  double lambda_;
};

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void PutU64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void PutDouble(std::string& out, double d) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &d, sizeof bits);
  PutU64(out, bits);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view Take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw DataError(std::string("model file truncated while reading ") + what);
    }
    const std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint64_t U64(const char* what) {
    const std::string_view b = Take(8, what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[i]);
    return v;
  }
  std::uint32_t U32(const char* what) {
    const std::string_view b = Take(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[i]);
    return v;
  }
  double Double(const char* what) {
    const std::uint64_t bits = U64(what);
    double d = 0.0;
    std::memcpy(&d, &bits, sizeof d);
    return d;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void SvmHyper::Validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("svm lambda must be > 0");
  if (epochs < 1) throw ConfigError("svm epochs must be >= 1");
}

double SvmObjective(const std::vector<SparseVector>& x, const std::vector<int>& y,
                    const std::vector<double>& weights, double bias, double lambda) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    loss += std::max(0.0, 1.0 - y[i] * (x[i].Dot(weights) + bias));
  }
  const double sq = std::inner_product(weights.begin(), weights.end(), weights.begin(), 0.0);
  return 0.5 * lambda * sq + loss / static_cast<double>(x.size());
}

SvmSolution TrainSvmOnVectors(const std::vector<SparseVector>& x, const std::vector<int>& y,
                              std::size_t dimension, const SvmHyper& hyper) {
  hyper.Validate();
  if (x.size() != y.size() || x.empty()) {
    throw ContractError("svm training needs one label per example and at least one example");
  }
  const bool has_pos = std::find(y.begin(), y.end(), 1) != y.end();
  const bool has_neg = std::find(y.begin(), y.end(), -1) != y.end();
  if (!has_pos || !has_neg) throw ContractError("svm training needs both classes");

  AsgdState state(dimension, hyper.lambda);
  const double t0 = 1.0 / hyper.lambda;
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  SvmSolution solution;
  double t = 0.0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    DeterministicShuffle(order, HashCombine(hyper.seed, static_cast<std::uint64_t>(epoch)));
    for (std::size_t i : order) {
      const double eta = 1.0 / (hyper.lambda * (t + t0));
      // Averaging starts with the second epoch: mu = 1 resets the average to
      // the current iterate, then 1/2, 1/3, ... accumulate a running mean.
      const double since = t - static_cast<double>(n);
      const double mu = since < 0.0 ? 0.0 : 1.0 / (1.0 + since);
      state.Step(x[i], y[i], eta, mu);
      t += 1.0;
    }
    const bool averaged = epoch >= 1;
    solution.weights = averaged ? state.AveragedWeights() : state.CurrentWeights();
    solution.bias = averaged ? state.averaged_bias() : state.bias();
    solution.objective_trace.push_back(
        SvmObjective(x, y, solution.weights, solution.bias, hyper.lambda));
  }
  return solution;
}

std::string DatasetFingerprint(const corpus::LabeledDataset& dataset) {
  std::string buffer;
  for (const corpus::Review& r : dataset.reviews) {
    buffer += r.id;
    buffer += '\x1f';
    buffer += corpus::LabelName(r.label);
    buffer += '\x1f';
    buffer += r.text;
    buffer += '\x1e';
  }
  return Sha256Hex(buffer);
}

TrainedDetector TrainSvm(const corpus::LabeledDataset& train, const SvmHyper& hyper,
                         const FeaturizerConfig& featurizer_config) {
  hyper.Validate();
  const corpus::LabelCounts counts = train.Counts();
  if (counts.real == 0 || counts.fake == 0) {
    throw ContractError("svm training set '" + train.name + "' has " +
                        std::to_string(counts.real) + " real and " +
                        std::to_string(counts.fake) + " fake reviews; both are required");
  }
  std::vector<std::string> texts;
  std::vector<int> y;
  texts.reserve(train.size());
  for (const corpus::Review& r : train.reviews) {
    texts.push_back(r.text);
    y.push_back(r.label == corpus::Label::kFake ? 1 : -1);
  }
  Featurizer featurizer(featurizer_config);
  featurizer.Fit(texts);
  std::vector<SparseVector> x;
  x.reserve(texts.size());
  for (const std::string& text : texts) x.push_back(featurizer.Transform(text));

  SvmSolution solution =
      TrainSvmOnVectors(x, y, featurizer_config.dimension(), hyper);
  TrainedDetector model{std::move(featurizer), std::move(solution.weights), solution.bias, {}};
  model.meta.seed = hyper.seed;
  model.meta.epochs = hyper.epochs;
  model.meta.lambda = hyper.lambda;
  model.meta.n_train = train.size();
  model.meta.dataset_fingerprint = DatasetFingerprint(train);
  model.meta.objective_trace = std::move(solution.objective_trace);
  return model;
}

Prediction Predict(const TrainedDetector& model, std::string_view text) {
  Prediction p;
  p.margin = model.featurizer.Transform(text).Dot(model.weights) + model.bias;
  p.label = p.margin > 0.0 ? corpus::Label::kFake : corpus::Label::kReal;
  return p;
}

std::vector<Prediction> PredictBatch(const TrainedDetector& model,
                                     const std::vector<std::string>& texts) {
  std::vector<Prediction> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) out.push_back(Predict(model, text));
  return out;
}

nlohmann::ordered_json TrainingMetaToJson(const TrainingMeta& m) {
  return {{"seed", m.seed},
          {"epochs", m.epochs},
          {"lambda", m.lambda},
          {"n_train", m.n_train},
          {"dataset_fingerprint", m.dataset_fingerprint},
          {"objective_trace", m.objective_trace}};
}

std::string SerializeModel(const TrainedDetector& model) {
  nlohmann::ordered_json header = {
      {"featurizer", FeaturizerConfigToJson(model.featurizer.config())},
      {"fitted_documents", model.featurizer.fitted_documents()},
      {"has_idf", !model.featurizer.idf().empty()},
      {"training_meta", TrainingMetaToJson(model.meta)}};
  const std::string header_text = header.dump();

  std::string out(kMagic, sizeof kMagic);
  PutU32(out, kFormatVersion);
  PutU64(out, header_text.size());
  out += header_text;
  PutDouble(out, model.bias);
  PutU64(out, model.weights.size());
  for (double w : model.weights) PutDouble(out, w);
  PutU64(out, model.featurizer.idf().size());
  for (double v : model.featurizer.idf()) PutDouble(out, v);
  return out;
}

TrainedDetector DeserializeModel(std::string_view bytes) {
  Reader in(bytes);
  if (in.Take(sizeof kMagic, "magic") != std::string_view(kMagic, sizeof kMagic)) {
    throw DataError("not a revforge model file");
  }
  const std::uint32_t version = in.U32("version");
  if (version != kFormatVersion) {
    throw DataError("unsupported model format version " + std::to_string(version));
  }
  const std::uint64_t header_size = in.U64("header size");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(in.Take(header_size, "header"));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model header is not valid JSON: ") + e.what());
  }

  try {
    const FeaturizerConfig config = FeaturizerConfigFromJson(header.at("featurizer"));
    const double bias = in.Double("bias");
    const std::uint64_t dim = in.U64("weight count");
    if (dim != config.dimension()) throw DataError("model weight count does not match header");
    std::vector<double> weights(dim);
    for (double& w : weights) w = in.Double("weights");
    const std::uint64_t idf_size = in.U64("idf count");
    if (idf_size != 0 && idf_size != dim) throw DataError("model idf size does not match");
    std::vector<double> idf(idf_size);
    for (double& v : idf) v = in.Double("idf");
    if (!in.done()) throw DataError("trailing bytes after model payload");

    const auto& m = header.at("training_meta");
    TrainingMeta meta;
    meta.seed = m.at("seed").get<std::uint64_t>();
    meta.epochs = m.at("epochs").get<int>();
    meta.lambda = m.at("lambda").get<double>();
    meta.n_train = m.at("n_train").get<std::size_t>();
    meta.dataset_fingerprint = m.at("dataset_fingerprint").get<std::string>();
    meta.objective_trace = m.at("objective_trace").get<std::vector<double>>();
    return TrainedDetector{
        Featurizer(config, std::move(idf), header.at("fitted_documents").get<std::size_t>()),
        std::move(weights), bias, std::move(meta)};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model header is missing fields: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("model header is invalid: ") + e.what());
  }
}

void SaveModel(const TrainedDetector& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write model file " + path.string());
  const std::string bytes = SerializeModel(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing model file " + path.string());
}

TrainedDetector LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return DeserializeModel(buffer.str());
}

}  // namespace revforge::detector
