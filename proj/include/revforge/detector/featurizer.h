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

#ifndef REVFORGE_DETECTOR_FEATURIZER_H_
#define REVFORGE_DETECTOR_FEATURIZER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revforge/common/text.h"

namespace revforge::detector {

struct FeaturizerConfig {
  int min_order = 1;
  int max_order = 2;
  int hash_bits = 18;
  Language language = Language::kEnglish;

  std::size_t dimension() const { return std::size_t{1} << hash_bits; }
  void Validate() const;  // ConfigError
  friend bool operator==(const FeaturizerConfig&, const FeaturizerConfig&) = default;
};

nlohmann::ordered_json FeaturizerConfigToJson(const FeaturizerConfig& config);
FeaturizerConfig FeaturizerConfigFromJson(const nlohmann::json& j);

// Sorted by index, no duplicates, no zero values.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  double Norm() const;
  double Dot(const std::vector<double>& dense) const;
};

// n-gram counts before hashing, keyed by the n-gram's tokens joined with
// single spaces. en n-grams are over lowercase words, zh over characters.
std::map<std::string, std::size_t> RawTermCounts(std::string_view text,
                                                 const FeaturizerConfig& config);

struct HashedSlot {
  std::uint32_t index = 0;
  double sign = 1.0;
};
// Bucket and sign for one n-gram (tokens joined with single spaces).
HashedSlot HashNgram(std::string_view ngram, int order, int hash_bits);

// Hashed TF-IDF with signed buckets, L2-normalized.
// idf(bucket) = ln((1 + N) / (1 + df(bucket))) + 1 over the fitted corpus;
// an unfitted featurizer uses idf = 1 everywhere.
class Featurizer {
 public:
  explicit Featurizer(FeaturizerConfig config = {});
  Featurizer(FeaturizerConfig config, std::vector<double> idf, std::size_t fitted_documents);

  void Fit(const std::vector<std::string>& texts);
  // Empty for texts without any token.
  SparseVector Transform(std::string_view text) const;
  // Signed TF per bucket, before IDF and normalization.
  SparseVector HashedCounts(std::string_view text) const;

  const FeaturizerConfig& config() const { return config_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t fitted_documents() const { return fitted_documents_; }

 private:
  FeaturizerConfig config_;
  std::vector<double> idf_;  // empty until fitted
  std::size_t fitted_documents_ = 0;
};

}  // namespace revforge::detector

#endif  // REVFORGE_DETECTOR_FEATURIZER_H_
