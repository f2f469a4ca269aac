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

#include "revforge/composer/composer.h"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "revforge/common/error.h"
#include "revforge/common/hash.h"
#include "revforge/common/logging.h"

namespace revforge::composer {
namespace {

using corpus::Label;
using corpus::Subset;

bool Admits(const CompositionTerm& term, const corpus::Review& r) {
  switch (term.origin) {
    case Origin::kOriginal:
      if (r.provenance.generated) return false;
      break;
    case Origin::kGenerated:
      if (!r.provenance.generated) return false;
      break;
    case Origin::kAll:
      break;
  }
  const Label basis = r.provenance.generated ? r.provenance.seed_label : r.label;
  return corpus::SubsetAdmits(term.subset, basis);
}

Label ApplyPolicy(LabelPolicy policy, Label label) {
  switch (policy) {
    case LabelPolicy::kForceFake:
      return Label::kFake;
    case LabelPolicy::kForceReal:
      return Label::kReal;
    case LabelPolicy::kInherit:
      break;
  }
  return label;
}

std::string LeakKey(const std::string& dataset, const std::string& id) {
  return dataset + '\x1f' + id;
}

CompositionTerm Orig(std::string source, Subset subset = Subset::kAll) {
  return {std::move(source), subset, Origin::kOriginal, LabelPolicy::kInherit};
}

CompositionTerm Gen(std::string source, Subset subset, LabelPolicy policy) {
  return {std::move(source), subset, Origin::kGenerated, policy};
}

using PresetTable = std::vector<std::pair<std::string, CompositionSpec>>;

void AddFamilyFromDerevList(PresetTable& table, const std::string& family) {
  const std::vector<std::pair<std::string, std::vector<CompositionTerm>>> rows = {
      {"A", {Orig("derev")}},
      {"B", {Orig("derev"), Orig("amazon")}},
      {"C", {Orig("derev"), Orig("amazon"), Gen("amazon", Subset::kAll, LabelPolicy::kInherit)}},
      {"D",
       {Orig("derev"), Orig("amazon"), Gen("amazon", Subset::kAll, LabelPolicy::kForceFake)}},
      {"E",
       {Orig("derev"), Orig("amazon"), Gen("amazon", Subset::kReal, LabelPolicy::kForceFake)}},
      {"F",
       {Orig("derev"), Orig("amazon"), Gen("amazon", Subset::kFake, LabelPolicy::kForceFake)}},
      {"G", {Orig("derev"), Gen("amazon", Subset::kAll, LabelPolicy::kInherit)}},
  };
  for (const auto& [letter, terms] : rows) {
    table.push_back({family + "/" + letter, CompositionSpec{family + "/" + letter, terms}});
  }
}

void AddSingleSourceFamily(PresetTable& table, const std::string& family,
                           const std::string& source, char first_letter) {
  const std::vector<std::vector<CompositionTerm>> rows = {
      {Orig(source)},
      {Orig(source), Gen(source, Subset::kAll, LabelPolicy::kInherit)},
      {Orig(source), Gen(source, Subset::kAll, LabelPolicy::kForceFake)},
      {Orig(source), Gen(source, Subset::kReal, LabelPolicy::kForceFake)},
      {Orig(source), Gen(source, Subset::kFake, LabelPolicy::kForceFake)},
  };
  char letter = first_letter;
  for (const auto& terms : rows) {
    const std::string id = family + "/" + std::string(1, letter++);
    table.push_back({id, CompositionSpec{id, terms}});
  }
}

// Yelp and DianPing list the "as fake" variants before the inheriting one.
void AddGenerationFamily(PresetTable& table, const std::string& family,
                         const std::string& source) {
  const std::vector<std::pair<std::string, std::vector<CompositionTerm>>> rows = {
      {"A", {Orig(source)}},
      {"B", {Orig(source), Gen(source, Subset::kAll, LabelPolicy::kForceFake)}},
      {"C", {Orig(source), Gen(source, Subset::kReal, LabelPolicy::kForceFake)}},
      {"D", {Orig(source), Gen(source, Subset::kFake, LabelPolicy::kForceFake)}},
      {"E", {Orig(source), Gen(source, Subset::kAll, LabelPolicy::kInherit)}},
      {"F", {Gen(source, Subset::kAll, LabelPolicy::kInherit)}},
  };
  for (const auto& [letter, terms] : rows) {
    table.push_back({family + "/" + letter, CompositionSpec{family + "/" + letter, terms}});
  }
}

const PresetTable& Presets() {
  static const PresetTable table = [] {
    PresetTable t;
    AddFamilyFromDerevList(t, "derev_test");
    CompositionSpec balanced = t.back().second;  // derev_test/G
    balanced.id = "derev_test/G_Balanced";
    balanced.balance = true;
    t.push_back({balanced.id, balanced});

    AddFamilyFromDerevList(t, "amazon_test");
    // H..L drop DeRev; H is Amazon alone, I..L follow C..F.
    AddSingleSourceFamily(t, "amazon_test", "amazon", 'H');

    AddGenerationFamily(t, "yelp_test", "yelp");
    AddGenerationFamily(t, "dianping_test", "dianping");
    return t;
  }();
  return table;
}

std::string DescribeTerm(const CompositionTerm& term) {
  const std::string name = SourceDisplayName(term.source);
  std::string subset;
  switch (term.subset) {
    case Subset::kReal:
      subset = "real";
      break;
    case Subset::kFake:
      subset = "fake";
      break;
    case Subset::kAll:
      subset = "real + fake";
      break;
  }
  std::string out;
  switch (term.origin) {
    case Origin::kOriginal:
      out = term.subset == Subset::kAll ? name : name + "(" + subset + ")";
      break;
    case Origin::kGenerated:
      out = "Generated(from " + name + "(" + subset + ")";
      break;
    case Origin::kAll:
      out = name + "(" + subset + ", original + generated";
      break;
  }
  if (term.label_policy == LabelPolicy::kForceFake) out += " as fake";
  if (term.label_policy == LabelPolicy::kForceReal) out += " as real";
  if (term.origin != Origin::kOriginal) out += ")";
  return out;
}

}  // namespace

std::string_view OriginName(Origin origin) {
  switch (origin) {
    case Origin::kOriginal:
      return "original";
    case Origin::kGenerated:
      return "generated";
    case Origin::kAll:
      break;
  }
  return "all";
}

Origin ParseOriginName(std::string_view name) {
  if (name == "original") return Origin::kOriginal;
  if (name == "generated") return Origin::kGenerated;
  if (name == "all") return Origin::kAll;
  throw ConfigError("unknown origin '" + std::string(name) +
                    "'; accepted: original, generated, all");
}

std::string_view LabelPolicyName(LabelPolicy policy) {
  switch (policy) {
    case LabelPolicy::kInherit:
      return "inherit";
    case LabelPolicy::kForceFake:
      return "force_fake";
    case LabelPolicy::kForceReal:
      break;
  }
  return "force_real";
}

LabelPolicy ParseLabelPolicyName(std::string_view name) {
  if (name == "inherit") return LabelPolicy::kInherit;
  if (name == "force_fake") return LabelPolicy::kForceFake;
  if (name == "force_real") return LabelPolicy::kForceReal;
  throw ConfigError("unknown label policy '" + std::string(name) +
                    "'; accepted: inherit, force_fake, force_real");
}

corpus::LabeledDataset Compose(const CompositionSpec& spec, const DatasetMap& datasets,
                               std::vector<std::string>* warnings) {
  if (spec.terms.empty()) throw ConfigError("composition '" + spec.id + "' has no terms");

  corpus::LabeledDataset out;
  out.name = spec.id;
  for (const CompositionTerm& term : spec.terms) {
    const auto it = datasets.find(term.source);
    if (it == datasets.end()) {
      std::string known;
      for (const auto& [tag, ds] : datasets) known += (known.empty() ? "" : ", ") + tag;
      throw ConfigError("composition '" + spec.id + "' references unknown dataset '" +
                        term.source + "' (available: " + known + ")");
    }
    const std::string& language = it->second.language;
    if (out.language.empty()) {
      out.language = language;
    } else if (!language.empty() && language != out.language) {
      throw ConfigError("composition '" + spec.id + "' mixes languages " + out.language +
                        " and " + language);
    }
  }

  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    const CompositionTerm& term = spec.terms[k];
    const std::string prefix = "t" + std::to_string(k) + ":";
    std::size_t selected = 0;
    for (const corpus::Review& r : datasets.at(term.source).reviews) {
      if (!Admits(term, r)) continue;
      corpus::Review copy = r;
      copy.id = prefix + r.id;
      copy.label = ApplyPolicy(term.label_policy, r.label);
      out.reviews.push_back(std::move(copy));
      ++selected;
    }
    if (selected == 0) {
      const std::string message =
          fmt::format("composition '{}': term {} ({}) selects no reviews", spec.id, k,
                      DescribeTerm(term));
      Log().warn("{}", message);
      if (warnings != nullptr) warnings->push_back(message);
    }
  }
  return spec.balance ? Balance(out, spec.seed) : out;
}

std::string StripTermNamespace(std::string_view id) {
  if (id.size() < 3 || id[0] != 't') return std::string(id);
  std::size_t i = 1;
  while (i < id.size() && id[i] >= '0' && id[i] <= '9') ++i;
  if (i == 1 || i >= id.size() || id[i] != ':') return std::string(id);
  return std::string(id.substr(i + 1));
}

corpus::LabeledDataset Balance(const corpus::LabeledDataset& dataset, std::uint64_t seed) {
  const corpus::LabelCounts counts = dataset.Counts();
  if (counts.real == 0 || counts.fake == 0) {
    throw ContractError(fmt::format("cannot balance '{}': {} real, {} fake", dataset.name,
                                    counts.real, counts.fake));
  }
  const Label majority = counts.fake > counts.real ? Label::kFake : Label::kReal;
  const std::size_t keep = std::min(counts.real, counts.fake);

  std::vector<std::size_t> majority_rows;
  for (std::size_t i = 0; i < dataset.reviews.size(); ++i) {
    if (dataset.reviews[i].label == majority) majority_rows.push_back(i);
  }
  DeterministicShuffle(majority_rows, seed);
  majority_rows.resize(keep);
  std::vector<bool> kept(dataset.reviews.size(), false);
  for (std::size_t i : majority_rows) kept[i] = true;

  corpus::LabeledDataset out;
  out.name = dataset.name;
  out.language = dataset.language;
  for (std::size_t i = 0; i < dataset.reviews.size(); ++i) {
    if (dataset.reviews[i].label != majority || kept[i]) {
      out.reviews.push_back(dataset.reviews[i]);
    }
  }
  return out;
}

std::vector<std::string> FindLeakage(const corpus::LabeledDataset& train,
                                     const corpus::LabeledDataset& test) {
  std::set<std::string> test_keys;
  for (const corpus::Review& r : test.reviews) test_keys.insert(LeakKey(r.dataset, r.id));

  std::vector<std::string> leaked;
  for (const corpus::Review& r : train.reviews) {
    const bool direct = test_keys.count(LeakKey(r.dataset, StripTermNamespace(r.id))) > 0;
    const bool via_seed = r.provenance.generated &&
                          test_keys.count(LeakKey(r.dataset, r.provenance.seed_id)) > 0;
    if (direct || via_seed) leaked.push_back(r.id);
  }
  return leaked;
}

void CheckNoLeakage(const corpus::LabeledDataset& train, const corpus::LabeledDataset& test) {
  std::vector<std::string> leaked = FindLeakage(train, test);
  if (leaked.empty()) return;
  std::string listed;
  for (std::size_t i = 0; i < leaked.size() && i < 10; ++i) {
    listed += (i ? ", " : "") + leaked[i];
  }
  if (leaked.size() > 10) listed += fmt::format(", ... ({} total)", leaked.size());
  throw LeakageError("training set '" + train.name + "' overlaps the test set: " + listed,
                     std::move(leaked));
}

const std::vector<std::string>& PresetNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, spec] : Presets()) n.push_back(name);
    return n;
  }();
  return names;
}

bool IsPresetName(std::string_view name) {
  const auto& names = PresetNames();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CompositionSpec Preset(std::string_view name) {
  for (const auto& [id, spec] : Presets()) {
    if (id == name) return spec;
  }
  throw ConfigError(fmt::format("unknown preset '{}'; valid presets ({}): {}", name,
                                PresetNames().size(), fmt::join(PresetNames(), ", ")));
}

std::string SourceDisplayName(std::string_view tag) {
  if (tag == "derev") return "DeRev";
  if (tag == "amazon") return "Amazon";
  if (tag == "yelp") return "Yelp";
  if (tag == "dianping") return "DianPing";
  return std::string(tag);
}

std::string DescribeSpec(const CompositionSpec& spec) {
  std::string out;
  for (const CompositionTerm& term : spec.terms) {
    if (!out.empty()) out += " + ";
    out += DescribeTerm(term);
  }
  if (spec.balance) out += " (balanced)";
  return out;
}

nlohmann::ordered_json TermToJson(const CompositionTerm& t) {
  return {{"source", t.source},
          {"subset", corpus::SubsetName(t.subset)},
          {"origin", OriginName(t.origin)},
          {"label_policy", LabelPolicyName(t.label_policy)}};
}

CompositionTerm TermFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("composition term must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "source" && key != "subset" && key != "origin" && key != "label_policy") {
      throw ConfigError("unknown composition term key '" + key + "'");
    }
  }
  try {
    CompositionTerm t;
    t.source = j.at("source").get<std::string>();
    t.subset = corpus::ParseSubsetName(j.value("subset", std::string("all")));
    t.origin = ParseOriginName(j.value("origin", std::string("original")));
    t.label_policy = ParseLabelPolicyName(j.value("label_policy", std::string("inherit")));
    if (t.source.empty()) throw ConfigError("composition term has an empty source");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed composition term: ") + e.what());
  }
}

nlohmann::ordered_json SpecToJson(const CompositionSpec& spec) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : spec.terms) terms.push_back(TermToJson(t));
  return {{"id", spec.id},
          {"description", DescribeSpec(spec)},
          {"terms", terms},
          {"balance", spec.balance},
          {"seed", spec.seed}};
}

CompositionSpec SpecFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("composition spec must be an object");
  try {
    CompositionSpec spec;
    spec.id = j.at("id").get<std::string>();
    if (spec.id.empty()) throw ConfigError("composition spec has an empty id");
    for (const auto& t : j.at("terms")) spec.terms.push_back(TermFromJson(t));
    if (spec.terms.empty()) throw ConfigError("composition '" + spec.id + "' has no terms");
    spec.balance = j.value("balance", false);
    spec.seed = j.value("seed", std::uint64_t{0});
    // "description" is derived; accepted on input and ignored.
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed composition spec: ") + e.what());
  }
}

}  // namespace revforge::composer
