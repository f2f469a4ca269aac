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

#ifndef REVFORGE_HARNESS_HARNESS_H_
#define REVFORGE_HARNESS_HARNESS_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "revforge/composer/composer.h"
#include "revforge/corpus/review.h"
#include "revforge/harness/config.h"
#include "revforge/metrics/classification.h"

namespace revforge::harness {

inline constexpr const char* kToolVersion = "0.1.0";

// Fixed results.csv header.
const std::string& ResultsCsvHeader();
std::string FormatResultRow(const metrics::EvalReport& report);

// Loaded inputs with the test split carved out. pools[tag] holds the
// training-eligible originals: the train side of the split for the test
// dataset, everything for the others.
struct PreparedData {
  std::map<std::string, corpus::LabeledDataset> pools;
  corpus::LabeledDataset test;
  std::vector<std::filesystem::path> input_files;
};

PreparedData PrepareData(const ExperimentConfig& config);

// Tags whose generated reviews the configured presets use. With no
// preset using generated data, every dataset is generated.
std::vector<std::string> GenerationSources(const ExperimentConfig& config);

// Records which files a command read and wrote, with SHA-256 digests.
class Manifest {
 public:
  Manifest(std::string command, const ExperimentConfig& config);

  void AddInput(const std::string& stage, const std::filesystem::path& path);
  void AddOutput(const std::string& stage, const std::filesystem::path& path);
  // Writes <output_dir>/manifest.json; `error` empty means success.
  void Write(const std::string& error = {});

 private:
  struct Stage {
    std::string name;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  };
  Stage& StageNamed(const std::string& name);

  std::string command_;
  std::filesystem::path output_dir_;
  std::string config_sha256_;
  std::string started_at_;
  std::vector<Stage> stages_;
};

// Writes generated/<tag>.all.jsonl plus the request log, gap trace and
// skip list for each generation source, reusing earlier output when its
// recorded fingerprint matches. Returns the generated reviews per tag.
std::map<std::string, corpus::LabeledDataset> RunGeneration(const ExperimentConfig& config,
                                                            const PreparedData& data,
                                                            Manifest& manifest);

struct CellResult {
  metrics::EvalReport report;
  std::vector<std::string> warnings;
};

// Composes, checks for leakage, trains and evaluates one cell.
CellResult RunCell(const composer::CompositionSpec& spec, const ClassifierConfig& classifier,
                   const composer::DatasetMap& pools, const corpus::LabeledDataset& test,
                   const std::filesystem::path& cell_dir);

// Directory name for a (preset, classifier) cell; '/' becomes '_'.
std::string CellDirectoryName(const std::string& config_id, const std::string& classifier_id);

// `revforge generate`: generation stage only.
void CmdGenerate(const ExperimentConfig& config);
// `revforge run`: generation, then every preset x classifier cell;
// writes cells/*/report.json and results.csv. Returns the reports in
// results.csv order.
std::vector<metrics::EvalReport> CmdRun(const ExperimentConfig& config);

}  // namespace revforge::harness

#endif  // REVFORGE_HARNESS_HARNESS_H_
