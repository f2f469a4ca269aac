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

#include "revforge/harness/cli.h"

#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "revforge/common/error.h"
#include "revforge/common/logging.h"
#include "revforge/composer/composer.h"
#include "revforge/corpus/io.h"
#include "revforge/corpus/validate.h"
#include "revforge/harness/config.h"
#include "revforge/harness/harness.h"
#include "revforge/harness/table.h"

namespace revforge::harness {
namespace fs = std::filesystem;

int ExitCodeFor(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error) != nullptr) return kExitConfig;
  if (dynamic_cast<const ContractError*>(&error) != nullptr) return kExitConfig;
  if (dynamic_cast<const DataError*>(&error) != nullptr) return kExitData;
  if (dynamic_cast<const BackendError*>(&error) != nullptr) return kExitBackend;
  return kExitFailure;
}

namespace {

int CmdPresets(const std::string& name, bool as_json, std::ostream& out) {
  std::vector<std::string> names =
      name.empty() ? composer::PresetNames() : std::vector<std::string>{name};
  if (as_json) {
    nlohmann::ordered_json specs = nlohmann::ordered_json::array();
    for (const auto& n : names) specs.push_back(composer::SpecToJson(composer::Preset(n)));
    out << (name.empty() ? specs : specs.front()).dump(2) << "\n";
    return kExitOk;
  }
  std::size_t width = 0;
  std::string listing;
  for (const auto& n : names) width = std::max(width, n.size());
  for (const auto& n : names) {
    listing += n + std::string(width - n.size() + 2, ' ') +
               composer::DescribeSpec(composer::Preset(n)) + "\n";
  }
  out << listing;
  return kExitOk;
}

int CmdValidate(const std::string& path, const std::string& schema, const std::string& language,
                bool as_json, std::ostream& out) {
  corpus::LoadOptions options;
  options.language = language;
  options.require_text = false;
  const corpus::LabeledDataset ds = corpus::LoadDataset(path, corpus::ParseSchema(schema), options);
  const corpus::ValidationReport report = corpus::Validate(ds);
  if (as_json) {
    out << corpus::ValidationReportToJson(report).dump(2) << "\n";
  } else {
    out << path << ": " << report.total << " reviews (" << report.histogram.real << " real, "
        << report.histogram.fake << " fake)\n";
    for (const auto& f : report.findings) {
      out << "  " << corpus::FindingKindName(f.kind) << " " << f.review_id << ": " << f.detail
          << "\n";
    }
    out << (report.ok() ? "ok\n" : std::to_string(report.findings.size()) + " finding(s)\n");
  }
  return report.ok() ? kExitOk : kExitData;
}

int CmdTable(const std::string& results, std::string plot_path, std::ostream& out) {
  const ComparisonTable table(ReadResultsCsv(fs::path(results)));
  out << table.Render();
  if (plot_path.empty()) plot_path = (fs::path(results).parent_path() / "plot_data.csv").string();
  std::ofstream plot(plot_path, std::ios::binary | std::ios::trunc);
  if (!plot) throw DataError("cannot write " + plot_path);
  plot << table.PlotData();
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ConfigureLoggingFromEnv();

  CLI::App app{"revforge: fake-review augmentation and detection experiments", "revforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string config_path;
  auto* generate = app.add_subcommand("generate", "Generate augmented reviews for a config");
  generate->add_option("--config", config_path, "Experiment config (JSON)")->required();
  auto* run = app.add_subcommand("run", "Generate, compose, train and evaluate every cell");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();

  std::string results_path;
  std::string plot_path;
  auto* table = app.add_subcommand("table", "Render results.csv as a comparison table");
  table->add_option("results", results_path, "results.csv from a run")->required();
  table->add_option("--plot-data", plot_path,
                    "Where to write plot data (default: plot_data.csv next to results)");

  std::string preset_name;
  bool as_json = false;
  auto* presets = app.add_subcommand("presets", "List the built-in training configurations");
  presets->add_option("name", preset_name, "Show a single preset");
  presets->add_flag("--json", as_json, "Print compositions as JSON");

  std::string dataset_path;
  std::string schema = "generic";
  std::string language;
  auto* validate = app.add_subcommand("validate", "Check a dataset file");
  validate->add_option("dataset", dataset_path, "Dataset file (.jsonl or .csv)")->required();
  validate->add_option("--schema", schema, "amazon, derev, yelp, dianping or generic");
  validate->add_option("--language", language, "en or zh (default: per schema)");
  validate->add_flag("--json", as_json, "Print the report as JSON");

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*generate) {
      CmdGenerate(LoadExperimentConfig(config_path));
      return kExitOk;
    }
    if (*run) {
      const auto reports = CmdRun(LoadExperimentConfig(config_path));
      out << reports.size() << " cell(s) written to results.csv\n";
      return kExitOk;
    }
    if (*table) return CmdTable(results_path, plot_path, out);
    if (*presets) return CmdPresets(preset_name, as_json, out);
    if (*validate) return CmdValidate(dataset_path, schema, language, as_json, out);
  } catch (const LeakageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitFailure;
}

}  // namespace revforge::harness
