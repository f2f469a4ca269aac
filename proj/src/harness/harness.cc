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

#include "revforge/harness/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "revforge/common/digest.h"
#include "revforge/common/error.h"
#include "revforge/common/logging.h"
#include "revforge/corpus/csv.h"
#include "revforge/corpus/split.h"
#include "revforge/detector/svm.h"
#include "revforge/generation/backend.h"

namespace revforge::harness {
namespace fs = std::filesystem;
namespace {

std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

void WriteText(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("failed writing " + path.string());
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

template <typename Records, typename ToJson>
std::string JsonLines(const Records& records, ToJson to_json) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::string GenerationFingerprint(const ExperimentConfig& config,
                                  const corpus::LabeledDataset& pool) {
  nlohmann::ordered_json j = GenerationSettingsToJson(config.generation);
  j["pool"] = detector::DatasetFingerprint(pool);
  return Sha256Hex(j.dump());
}

std::vector<corpus::Label> NativePredict(const ClassifierConfig& classifier,
                                         const corpus::LabeledDataset& train,
                                         const corpus::LabeledDataset& test,
                                         const fs::path& cell_dir) {
  detector::FeaturizerConfig fc;
  fc.min_order = classifier.min_order;
  fc.max_order = classifier.max_order;
  fc.hash_bits = classifier.hash_bits;
  fc.language = ParseLanguage(train.language.empty() ? test.language : train.language);
  const detector::TrainedDetector model = detector::TrainSvm(train, classifier.svm, fc);
  if (classifier.save_model) detector::SaveModel(model, cell_dir / "model.bin");

  std::vector<corpus::Label> labels;
  labels.reserve(test.size());
  for (const corpus::Review& r : test.reviews) {
    labels.push_back(detector::Predict(model, r.text).label);
  }
  return labels;
}

}  // namespace

const std::string& ResultsCsvHeader() {
  static const std::string header =
      "config_id,classifier_id,accuracy,precision_fake,recall_fake,f1_fake,"
      "precision_real,recall_real,f1_real,n_train,n_test";
  return header;
}

std::string FormatResultRow(const metrics::EvalReport& r) {
  return fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{}",
                     corpus::CsvEscape(r.config_id), corpus::CsvEscape(r.classifier_id),
                     r.accuracy, r.fake.precision, r.fake.recall, r.fake.f1, r.real.precision,
                     r.real.recall, r.real.f1, r.n_train, r.n_test);
}

PreparedData PrepareData(const ExperimentConfig& config) {
  PreparedData data;
  for (const auto& [tag, source] : config.datasets) {
    corpus::LoadOptions options;
    options.name = tag;
    options.language = source.language;
    options.label_table = source.labels;
    corpus::LabeledDataset ds = corpus::LoadDataset(source.path, source.schema, options);
    for (corpus::Review& r : ds.reviews) {
      if (r.provenance.generated) {
        throw DataError("dataset '" + tag + "' contains generated review " + r.id +
                        "; inputs must be original reviews");
      }
      r.dataset = tag;
    }
    std::set<std::string> ids;
    for (const corpus::Review& r : ds.reviews) {
      if (!ids.insert(r.id).second) {
        throw DataError("dataset '" + tag + "' repeats review id " + r.id);
      }
    }
    data.input_files.push_back(source.path);
    if (tag == config.test_set.dataset) {
      corpus::SplitResult split = corpus::Split(ds, 1.0 - config.test_set.fraction,
                                                config.test_set.split_seed,
                                                config.test_set.stratify);
      data.test = std::move(split.test);
      data.pools.emplace(tag, std::move(split.train));
    } else {
      data.pools.emplace(tag, std::move(ds));
    }
  }
  return data;
}

std::vector<std::string> GenerationSources(const ExperimentConfig& config) {
  std::set<std::string> tags;
  for (const auto& spec : config.presets) {
    for (const auto& term : spec.terms) {
      if (term.origin != composer::Origin::kOriginal) tags.insert(term.source);
    }
  }
  if (tags.empty() && config.presets.empty()) {
    for (const auto& [tag, source] : config.datasets) tags.insert(tag);
  }
  return {tags.begin(), tags.end()};
}

Manifest::Manifest(std::string command, const ExperimentConfig& config)
    : command_(std::move(command)),
      output_dir_(config.output_dir),
      config_sha256_(config.config_sha256),
      started_at_(UtcNow()) {}

Manifest::Stage& Manifest::StageNamed(const std::string& name) {
  for (Stage& s : stages_) {
    if (s.name == name) return s;
  }
  stages_.push_back(Stage{name});
  return stages_.back();
}

void Manifest::AddInput(const std::string& stage, const fs::path& path) {
  StageNamed(stage).inputs.push_back({{"path", path.string()}, {"sha256", Sha256File(path)}});
}

void Manifest::AddOutput(const std::string& stage, const fs::path& path) {
  StageNamed(stage).outputs.push_back(
      {{"path", fs::relative(path, output_dir_).generic_string()}, {"sha256", Sha256File(path)}});
}

void Manifest::Write(const std::string& error) {
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const Stage& s : stages_) {
    stages.push_back({{"name", s.name}, {"inputs", s.inputs}, {"outputs", s.outputs}});
  }
  nlohmann::ordered_json j = {{"tool", "revforge"},
                              {"version", kToolVersion},
                              {"command", command_},
                              {"config_sha256", config_sha256_},
                              {"started_at", started_at_},
                              {"finished_at", UtcNow()},
                              {"status", error.empty() ? "ok" : "failed"}};
  if (!error.empty()) j["error"] = error;
  j["stages"] = stages;
  WriteText(output_dir_ / "manifest.json", j.dump(2) + "\n");
}

std::map<std::string, corpus::LabeledDataset> RunGeneration(const ExperimentConfig& config,
                                                            const PreparedData& data,
                                                            Manifest& manifest) {
  std::map<std::string, corpus::LabeledDataset> generated;
  const std::vector<std::string> sources = GenerationSources(config);
  if (sources.empty()) return generated;

  const auto backend = generation::MakeCompletionBackend(config.generation.backend);
  const auto scorer = coherence::MakeScorer(config.generation.scorer);
  const fs::path dir = config.output_dir / "generated";
  fs::create_directories(dir);

  for (const std::string& tag : sources) {
    const corpus::LabeledDataset& pool = data.pools.at(tag);
    const fs::path data_path = dir / (tag + ".all.jsonl");
    const fs::path requests_path = dir / (tag + ".requests.jsonl");
    const fs::path trace_path = dir / (tag + ".trace.jsonl");
    const fs::path skipped_path = dir / (tag + ".skipped.json");
    const fs::path stamp_path = dir / (tag + ".fingerprint");
    const std::string fingerprint = GenerationFingerprint(config, pool);

    const bool reusable = fs::exists(stamp_path) && fs::exists(data_path) &&
                          fs::exists(requests_path) && fs::exists(trace_path) &&
                          fs::exists(skipped_path) && ReadText(stamp_path) == fingerprint + "\n";
    if (reusable) {
      Log().info("reusing generated data for '{}'", tag);
      corpus::LoadOptions options;
      options.name = tag + "_generated";
      options.language = pool.language;
      generated.emplace(tag, corpus::LoadDataset(data_path, corpus::Schema::kGeneric, options));
    } else {
      Log().info("generating from '{}' ({} seeds)", tag, pool.size());
      interpolator::AugmentResult result = interpolator::AugmentDataset(
          pool, config.generation.config, corpus::Subset::kAll, *backend, *scorer);
      corpus::SaveDataset(result.generated, data_path);
      WriteText(requests_path,
                JsonLines(result.requests, generation::CompletionRecordToJson));
      WriteText(trace_path, JsonLines(result.trace, interpolator::GapTraceToJson));
      nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
      for (const auto& s : result.skipped) {
        skipped.push_back({{"review_id", s.review_id}, {"reason", s.reason}});
      }
      WriteText(skipped_path, skipped.dump(2) + "\n");
      WriteText(stamp_path, fingerprint + "\n");
      generated.emplace(tag, std::move(result.generated));
    }
    for (const fs::path& p : {data_path, requests_path, trace_path, skipped_path}) {
      manifest.AddOutput("generate", p);
    }
  }
  return generated;
}

std::string CellDirectoryName(const std::string& config_id, const std::string& classifier_id) {
  std::string name = config_id + "__" + classifier_id;
  std::replace(name.begin(), name.end(), '/', '_');
  return name;
}

CellResult RunCell(const composer::CompositionSpec& spec, const ClassifierConfig& classifier,
                   const composer::DatasetMap& pools, const corpus::LabeledDataset& test,
                   const fs::path& cell_dir) {
  CellResult cell;
  const corpus::LabeledDataset train = composer::Compose(spec, pools, &cell.warnings);
  composer::CheckNoLeakage(train, test);
  fs::create_directories(cell_dir);

  std::vector<corpus::Label> predicted;
  if (classifier.type == ClassifierConfig::Type::kNativeSvm) {
    predicted = NativePredict(classifier, train, test, cell_dir);
  } else {
    predicted = detector::ExternalPredict(train, test, classifier.external);
  }
  std::vector<corpus::Label> gold;
  gold.reserve(test.size());
  for (const corpus::Review& r : test.reviews) gold.push_back(r.label);
  cell.report = metrics::ClassificationReport(predicted, gold, spec.id, classifier.id);
  cell.report.n_train = train.size();

  nlohmann::ordered_json j = metrics::EvalReportToJson(cell.report);
  j["composition"] = composer::SpecToJson(spec);
  j["warnings"] = cell.warnings;
  WriteText(cell_dir / "report.json", j.dump(2) + "\n");
  return cell;
}

void CmdGenerate(const ExperimentConfig& config) {
  Manifest manifest("generate", config);
  try {
    const PreparedData data = PrepareData(config);
    for (const fs::path& p : data.input_files) manifest.AddInput("load", p);
    RunGeneration(config, data, manifest);
  } catch (const std::exception& e) {
    manifest.Write(e.what());
    throw;
  }
  manifest.Write();
}

std::vector<metrics::EvalReport> CmdRun(const ExperimentConfig& config) {
  Manifest manifest("run", config);
  std::vector<metrics::EvalReport> reports;
  try {
    const PreparedData data = PrepareData(config);
    for (const fs::path& p : data.input_files) manifest.AddInput("load", p);
    std::map<std::string, corpus::LabeledDataset> generated =
        RunGeneration(config, data, manifest);

    composer::DatasetMap pools = data.pools;
    for (auto& [tag, ds] : generated) {
      corpus::LabeledDataset& pool = pools.at(tag);
      for (corpus::Review& r : ds.reviews) pool.reviews.push_back(std::move(r));
    }

    struct Task {
      const composer::CompositionSpec* spec;
      const ClassifierConfig* classifier;
    };
    std::vector<Task> tasks;
    for (const auto& spec : config.presets) {
      for (const auto& classifier : config.classifiers) tasks.push_back({&spec, &classifier});
    }
    std::vector<CellResult> results(tasks.size());
    const fs::path cells_dir = config.output_dir / "cells";
    auto run_task = [&](std::size_t i) {
      const Task& t = tasks[i];
      Log().info("cell {} x {}", t.spec->id, t.classifier->id);
      results[i] = RunCell(*t.spec, *t.classifier, pools, data.test,
                           cells_dir / CellDirectoryName(t.spec->id, t.classifier->id));
    };

    const std::size_t workers = std::min<std::size_t>(
        static_cast<std::size_t>(config.max_parallel_cells), tasks.size());
    if (workers <= 1) {
      for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::mutex error_mutex;
      std::size_t error_index = tasks.size();
      std::exception_ptr error;
      {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
          pool.emplace_back([&] {
            for (std::size_t i = next++; i < tasks.size(); i = next++) {
              try {
                run_task(i);
              } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                  error_index = i;
                  error = std::current_exception();
                }
              }
            }
          });
        }
      }
      if (error) std::rethrow_exception(error);
    }

    std::string csv = ResultsCsvHeader() + "\n";
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      csv += FormatResultRow(results[i].report) + "\n";
      manifest.AddOutput("run", cells_dir /
                                    CellDirectoryName(tasks[i].spec->id,
                                                      tasks[i].classifier->id) /
                                    "report.json");
      reports.push_back(results[i].report);
    }
    const fs::path results_path = config.output_dir / "results.csv";
    WriteText(results_path, csv);
    manifest.AddOutput("run", results_path);
  } catch (const std::exception& e) {
    manifest.Write(e.what());
    throw;
  }
  manifest.Write();
  return reports;
}

}  // namespace revforge::harness
