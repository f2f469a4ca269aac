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

#ifndef REVFORGE_HARNESS_CONFIG_H_
#define REVFORGE_HARNESS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "revforge/coherence/coherence.h"
#include "revforge/composer/composer.h"
#include "revforge/corpus/io.h"
#include "revforge/detector/external.h"
#include "revforge/detector/featurizer.h"
#include "revforge/detector/svm.h"
#include "revforge/generation/backend_config.h"
#include "revforge/interpolator/interpolator.h"

namespace revforge::harness {

struct DatasetSource {
  std::filesystem::path path;
  corpus::Schema schema = corpus::Schema::kGeneric;
  std::string language;  // empty: schema default
  std::optional<corpus::LabelTable> labels;
};

struct TestSetConfig {
  std::string dataset;
  std::uint64_t split_seed = 0;
  double fraction = 0.2;  // share held out for testing
  bool stratify = true;
};

struct ClassifierConfig {
  enum class Type { kNativeSvm, kExternal };

  std::string id;
  Type type = Type::kNativeSvm;
  detector::SvmHyper svm;
  int min_order = 1;
  int max_order = 2;
  int hash_bits = 18;
  bool save_model = false;
  detector::ExternalClassifierOptions external;
};

struct GenerationSettings {
  generation::BackendConfig backend;
  interpolator::GenerationConfig config;
  coherence::ScorerConfig scorer;
};

struct ExperimentConfig {
  std::map<std::string, DatasetSource> datasets;
  TestSetConfig test_set;
  std::vector<composer::CompositionSpec> presets;
  std::vector<ClassifierConfig> classifiers;
  GenerationSettings generation;
  std::filesystem::path output_dir;
  int max_parallel_cells = 1;
  // SHA-256 of the canonical (key-sorted) JSON document.
  std::string config_sha256;
};

// Relative paths are resolved against `base_dir`. Every problem is a
// ConfigError that names the offending key.
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j,
                                          const std::filesystem::path& base_dir);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

interpolator::GenerationConfig GenerationConfigFromJson(const nlohmann::json& j);
nlohmann::ordered_json GenerationSettingsToJson(const GenerationSettings& settings);
ClassifierConfig ClassifierConfigFromJson(const nlohmann::json& j);

}  // namespace revforge::harness

#endif  // REVFORGE_HARNESS_CONFIG_H_
