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

#ifndef REVFORGE_COMPOSER_COMPOSER_H_
#define REVFORGE_COMPOSER_COMPOSER_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revforge/corpus/review.h"

namespace revforge::composer {

enum class Origin { kOriginal, kGenerated, kAll };
enum class LabelPolicy { kInherit, kForceFake, kForceReal };

std::string_view OriginName(Origin origin);  // original / generated / all
Origin ParseOriginName(std::string_view name);
std::string_view LabelPolicyName(LabelPolicy policy);  // inherit / force_fake / force_real
LabelPolicy ParseLabelPolicyName(std::string_view name);

// Selects part of one source pool. For generated reviews `subset` matches
// the seed's label, so "Generated(from X(real))" picks reviews grown from
// real seeds whatever label they carry now.
struct CompositionTerm {
  std::string source;
  corpus::Subset subset = corpus::Subset::kAll;
  Origin origin = Origin::kOriginal;
  LabelPolicy label_policy = LabelPolicy::kInherit;

  friend bool operator==(const CompositionTerm&, const CompositionTerm&) = default;
};

struct CompositionSpec {
  std::string id;
  std::vector<CompositionTerm> terms;
  bool balance = false;
  std::uint64_t seed = 0;

  friend bool operator==(const CompositionSpec&, const CompositionSpec&) = default;
};

// Source tag -> pool holding that source's originals and anything
// generated from them.
using DatasetMap = std::map<std::string, corpus::LabeledDataset>;

// Concatenates every term's selection in term order, rewriting labels per
// policy and prefixing ids with "t<term index>:". Provenance is kept.
// Unknown source tags and sources of different languages are ConfigErrors;
// a term that selects nothing only warns (and is reported via `warnings`).
corpus::LabeledDataset Compose(const CompositionSpec& spec, const DatasetMap& datasets,
                               std::vector<std::string>* warnings = nullptr);

// Removes the "t<k>:" prefix Compose adds; other ids are returned unchanged.
std::string StripTermNamespace(std::string_view id);

// Down-samples the majority class to the minority count; the kept reviews
// stay in input order. Throws ContractError if a class is missing.
corpus::LabeledDataset Balance(const corpus::LabeledDataset& dataset, std::uint64_t seed);

// Ids of training reviews that are, or were generated from, a review of
// the test set. Matching is on (dataset, id).
std::vector<std::string> FindLeakage(const corpus::LabeledDataset& train,
                                     const corpus::LabeledDataset& test);
// Throws LeakageError naming the offending ids if FindLeakage finds any.
void CheckNoLeakage(const corpus::LabeledDataset& train, const corpus::LabeledDataset& test);

// Published training configurations, e.g. "derev_test/E", "amazon_test/K",
// "dianping_test/F". Unknown names throw ConfigError listing them all.
CompositionSpec Preset(std::string_view name);
const std::vector<std::string>& PresetNames();
bool IsPresetName(std::string_view name);

// Display name for a source tag ("derev" -> "DeRev"); unknown tags are
// returned as is.
std::string SourceDisplayName(std::string_view tag);
// Human-readable recipe, e.g.
//   "DeRev + Amazon + Generated(from Amazon(real) as fake)".
std::string DescribeSpec(const CompositionSpec& spec);

nlohmann::ordered_json TermToJson(const CompositionTerm& term);
CompositionTerm TermFromJson(const nlohmann::json& j);
nlohmann::ordered_json SpecToJson(const CompositionSpec& spec);
CompositionSpec SpecFromJson(const nlohmann::json& j);

}  // namespace revforge::composer

#endif  // REVFORGE_COMPOSER_COMPOSER_H_
