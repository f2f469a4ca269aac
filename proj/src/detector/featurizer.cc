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

#include "revforge/detector/featurizer.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "revforge/common/error.h"
#include "revforge/common/hash.h"

namespace revforge::detector {
namespace {

template <typename Fn>
void ForEachNgram(std::string_view text, const FeaturizerConfig& config, Fn&& fn) {
  const std::vector<std::string> tokens = WordTokens(text, config.language);
  for (int n = config.min_order; n <= config.max_order; ++n) {
    const auto order = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t k = 1; k < order; ++k) gram += ' ' + tokens[i + k];
      fn(gram, n);
    }
  }
}

SparseVector FromMap(const std::unordered_map<std::uint32_t, double>& buckets) {
  SparseVector v;
  v.entries.reserve(buckets.size());
  for (const auto& [index, value] : buckets) {
    if (value != 0.0) v.entries.emplace_back(index, value);
  }
  std::sort(v.entries.begin(), v.entries.end());
  return v;
}

}  // namespace

void FeaturizerConfig::Validate() const {
  if (min_order < 1 || max_order < min_order || max_order > 5) {
    throw ConfigError("featurizer n-gram orders must satisfy 1 <= min <= max <= 5");
  }
  if (hash_bits < 4 || hash_bits > 24) {
    throw ConfigError("featurizer hash_bits must be in [4, 24]");
  }
}

nlohmann::ordered_json FeaturizerConfigToJson(const FeaturizerConfig& c) {
  return {{"min_order", c.min_order},
          {"max_order", c.max_order},
          {"hash_bits", c.hash_bits},
          {"language", LanguageTag(c.language)}};
}

FeaturizerConfig FeaturizerConfigFromJson(const nlohmann::json& j) {
  try {
    FeaturizerConfig c;
    c.min_order = j.value("min_order", c.min_order);
    c.max_order = j.value("max_order", c.max_order);
    c.hash_bits = j.value("hash_bits", c.hash_bits);
    c.language = ParseLanguage(j.value("language", std::string("en")));
    c.Validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed featurizer config: ") + e.what());
  }
}

double SparseVector::Norm() const {
  double sum = 0.0;
  for (const auto& [index, value] : entries) sum += value * value;
  return std::sqrt(sum);
}

double SparseVector::Dot(const std::vector<double>& dense) const {
  double sum = 0.0;
  for (const auto& [index, value] : entries) sum += value * dense[index];
  return sum;
}

std::map<std::string, std::size_t> RawTermCounts(std::string_view text,
                                                 const FeaturizerConfig& config) {
  std::map<std::string, std::size_t> counts;
  ForEachNgram(text, config, [&](const std::string& gram, int) { ++counts[gram]; });
  return counts;
}

HashedSlot HashNgram(std::string_view ngram, int order, int hash_bits) {
  const std::uint64_t h = HashCombine(Fnv1a64(ngram), static_cast<std::uint64_t>(order));
  HashedSlot slot;
  slot.index = static_cast<std::uint32_t>(h & ((std::uint64_t{1} << hash_bits) - 1));
  slot.sign = (h >> 63) != 0 ? -1.0 : 1.0;
  return slot;
}

Featurizer::Featurizer(FeaturizerConfig config) : config_(config) { config_.Validate(); }

Featurizer::Featurizer(FeaturizerConfig config, std::vector<double> idf,
                       std::size_t fitted_documents)
    : config_(config), idf_(std::move(idf)), fitted_documents_(fitted_documents) {
  config_.Validate();
  if (!idf_.empty() && idf_.size() != config_.dimension()) {
    throw DataError("idf table has " + std::to_string(idf_.size()) + " entries, expected " +
                    std::to_string(config_.dimension()));
  }
}

SparseVector Featurizer::HashedCounts(std::string_view text) const {
  std::unordered_map<std::uint32_t, double> buckets;
  ForEachNgram(text, config_, [&](const std::string& gram, int order) {
    const HashedSlot slot = HashNgram(gram, order, config_.hash_bits);
    buckets[slot.index] += slot.sign;
  });
  return FromMap(buckets);
}

void Featurizer::Fit(const std::vector<std::string>& texts) {
  std::vector<std::size_t> df(config_.dimension(), 0);
  for (const std::string& text : texts) {
    for (const auto& [index, value] : HashedCounts(text).entries) ++df[index];
  }
  const auto n = static_cast<double>(texts.size());
  idf_.assign(config_.dimension(), 0.0);
  for (std::size_t i = 0; i < df.size(); ++i) {
    idf_[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[i]))) + 1.0;
  }
  fitted_documents_ = texts.size();
}

SparseVector Featurizer::Transform(std::string_view text) const {
  SparseVector v = HashedCounts(text);
  if (!idf_.empty()) {
    for (auto& [index, value] : v.entries) value *= idf_[index];
  }
  const double norm = v.Norm();
  if (norm > 0.0) {
    for (auto& [index, value] : v.entries) value /= norm;
  }
  return v;
}

}  // namespace revforge::detector
