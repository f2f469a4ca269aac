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

#include "revforge/harness/config.h"

#include <fstream>
#include <set>

#include "revforge/common/digest.h"
#include "revforge/common/error.h"

namespace revforge::harness {
namespace {

using nlohmann::json;

void RejectUnknownKeys(const json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key) == 0) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T Get(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

template <typename T>
T Require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  return Get<T>(j, key, T{}, where);
}

DatasetSource DatasetFromJson(const json& j, const std::string& tag,
                              const std::filesystem::path& base_dir) {
  const std::string where = "datasets." + tag;
  RejectUnknownKeys(j, {"path", "schema", "language", "labels"}, where);
  DatasetSource d;
  d.path = Require<std::string>(j, "path", where);
  if (d.path.is_relative()) d.path = base_dir / d.path;
  d.schema = corpus::ParseSchema(Get<std::string>(j, "schema", "generic", where));
  d.language = Get<std::string>(j, "language", "", where);
  if (!d.language.empty()) ParseLanguage(d.language);
  if (j.contains("labels")) {
    corpus::LabelTable table;
    const json& labels = j.at("labels");
    if (!labels.is_object()) throw ConfigError(where + ".labels must map tokens to labels");
    for (const auto& [token, label] : labels.items()) {
      if (!label.is_string()) throw ConfigError(where + ".labels." + token + " must be a string");
      try {
        table[token] = corpus::ParseLabelName(label.get<std::string>());
      } catch (const DataError& e) {
        throw ConfigError(where + ".labels." + token + ": " + e.what());
      }
    }
    d.labels = std::move(table);
  }
  return d;
}

}  // namespace

interpolator::GenerationConfig GenerationConfigFromJson(const json& j) {
  const std::string where = "generation";
  interpolator::GenerationConfig c;
  c.target_length = Get<int>(j, "target_length", c.target_length, where);
  c.fan_out = Get<int>(j, "fan_out", c.fan_out, where);
  c.seed = Get<std::uint64_t>(j, "seed", c.seed, where);
  c.context_mode = interpolator::ParseContextModeName(
      Get<std::string>(j, "context_mode", "adjacent", where));
  c.max_concurrency = Get<int>(j, "max_concurrency", c.max_concurrency, where);
  c.Validate();
  return c;
}

nlohmann::ordered_json GenerationSettingsToJson(const GenerationSettings& s) {
  return {{"backend", generation::BackendConfigToJson(s.backend)},
          {"target_length", s.config.target_length},
          {"fan_out", s.config.fan_out},
          {"seed", s.config.seed},
          {"context_mode", interpolator::ContextModeName(s.config.context_mode)},
          {"scorer", coherence::ScorerConfigToJson(s.scorer)}};
}

ClassifierConfig ClassifierConfigFromJson(const json& j) {
  if (!j.is_object()) throw ConfigError("each classifier must be an object");
  const std::string id = Get<std::string>(j, "id", "", "classifiers[]");
  if (id.empty()) throw ConfigError("every classifier needs a non-empty 'id'");
  const std::string where = "classifiers." + id;
  const std::string type = Get<std::string>(j, "type", "native_svm", where);

  ClassifierConfig c;
  c.id = id;
  if (type == "native_svm") {
    RejectUnknownKeys(j,
                      {"id", "type", "lambda", "epochs", "seed", "min_order", "max_order",
                       "hash_bits", "save_model"},
                      where);
    c.type = ClassifierConfig::Type::kNativeSvm;
    c.svm.lambda = Get<double>(j, "lambda", c.svm.lambda, where);
    c.svm.epochs = Get<int>(j, "epochs", c.svm.epochs, where);
    c.svm.seed = Get<std::uint64_t>(j, "seed", c.svm.seed, where);
    c.min_order = Get<int>(j, "min_order", c.min_order, where);
    c.max_order = Get<int>(j, "max_order", c.max_order, where);
    c.hash_bits = Get<int>(j, "hash_bits", c.hash_bits, where);
    c.save_model = Get<bool>(j, "save_model", c.save_model, where);
    c.svm.Validate();
    detector::FeaturizerConfig{c.min_order, c.max_order, c.hash_bits, Language::kEnglish}
        .Validate();
  } else if (type == "external") {
    c.type = ClassifierConfig::Type::kExternal;
    json rest = j;
    rest.erase("id");
    rest.erase("type");
    c.external = detector::ExternalClassifierOptionsFromJson(rest);
  } else {
    throw ConfigError(where + ".type must be native_svm or external, got '" + type + "'");
  }
  return c;
}

ExperimentConfig ExperimentConfigFromJson(const json& j, const std::filesystem::path& base_dir) {
  RejectUnknownKeys(j,
                    {"datasets", "test_set", "presets", "classifiers", "generation",
                     "output_dir", "max_parallel_cells"},
                    "config");
  ExperimentConfig c;
  c.config_sha256 = Sha256Hex(j.dump());

  if (!j.contains("datasets") || !j.at("datasets").is_object() || j.at("datasets").empty()) {
    throw ConfigError("config needs a non-empty 'datasets' object");
  }
  for (const auto& [tag, value] : j.at("datasets").items()) {
    c.datasets.emplace(tag, DatasetFromJson(value, tag, base_dir));
  }

  if (!j.contains("test_set")) throw ConfigError("config is missing 'test_set'");
  const json& ts = j.at("test_set");
  RejectUnknownKeys(ts, {"dataset", "split_seed", "fraction", "stratify"}, "test_set");
  c.test_set.dataset = Require<std::string>(ts, "dataset", "test_set");
  c.test_set.split_seed = Get<std::uint64_t>(ts, "split_seed", 0, "test_set");
  c.test_set.fraction = Get<double>(ts, "fraction", 0.2, "test_set");
  c.test_set.stratify = Get<bool>(ts, "stratify", true, "test_set");
  if (c.datasets.count(c.test_set.dataset) == 0) {
    throw ConfigError("test_set.dataset '" + c.test_set.dataset + "' is not in datasets");
  }
  if (!(c.test_set.fraction > 0.0 && c.test_set.fraction < 1.0)) {
    throw ConfigError("test_set.fraction must be in (0, 1)");
  }

  if (!j.contains("presets") || !j.at("presets").is_array() || j.at("presets").empty()) {
    throw ConfigError("config needs a non-empty 'presets' list");
  }
  std::set<std::string> preset_ids;
  for (const json& p : j.at("presets")) {
    composer::CompositionSpec spec =
        p.is_string() ? composer::Preset(p.get<std::string>()) : composer::SpecFromJson(p);
    for (const auto& term : spec.terms) {
      if (c.datasets.count(term.source) == 0) {
        throw ConfigError("preset '" + spec.id + "' uses dataset '" + term.source +
                          "', which is not in datasets");
      }
    }
    if (!preset_ids.insert(spec.id).second) {
      throw ConfigError("preset '" + spec.id + "' is listed twice");
    }
    c.presets.push_back(std::move(spec));
  }

  if (!j.contains("classifiers") || !j.at("classifiers").is_array() ||
      j.at("classifiers").empty()) {
    throw ConfigError("config needs a non-empty 'classifiers' list");
  }
  std::set<std::string> classifier_ids;
  for (const json& cl : j.at("classifiers")) {
    ClassifierConfig parsed = ClassifierConfigFromJson(cl);
    if (!classifier_ids.insert(parsed.id).second) {
      throw ConfigError("classifier '" + parsed.id + "' is listed twice");
    }
    c.classifiers.push_back(std::move(parsed));
  }

  const json gen = j.value("generation", json::object());
  RejectUnknownKeys(gen,
                    {"backend", "target_length", "fan_out", "seed", "scorer", "context_mode",
                     "max_concurrency"},
                    "generation");
  c.generation.backend = generation::BackendConfigFromJson(gen.value("backend", json::object()));
  c.generation.config = GenerationConfigFromJson(gen);
  c.generation.scorer = coherence::ScorerConfigFromJson(gen.value("scorer", json::object()));

  c.output_dir = Get<std::string>(j, "output_dir", "revforge_out", "config");
  if (c.output_dir.is_relative()) c.output_dir = base_dir / c.output_dir;
  c.max_parallel_cells = Get<int>(j, "max_parallel_cells", 1, "config");
  if (c.max_parallel_cells < 1) throw ConfigError("max_parallel_cells must be >= 1");
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return ExperimentConfigFromJson(j, path.parent_path());
}

}  // namespace revforge::harness
