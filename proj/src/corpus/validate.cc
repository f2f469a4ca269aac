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

#include "revforge/corpus/validate.h"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "revforge/common/text.h"

namespace revforge::corpus {

std::string_view FindingKindName(FindingKind kind) {
  switch (kind) {
    case FindingKind::kDuplicateId:
      return "duplicate_id";
    case FindingKind::kEmptyText:
      return "empty_text";
    case FindingKind::kMissingSeedId:
      return "missing_seed_id";
    case FindingKind::kSeedIsGenerated:
      break;
  }
  return "seed_is_generated";
}

std::size_t ValidationReport::Count(FindingKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      findings.begin(), findings.end(),
      [kind](const ValidationFinding& f) { return f.kind == kind; }));
}

ValidationReport Validate(const LabeledDataset& dataset) {
  ValidationReport report;
  report.total = dataset.size();
  report.histogram = dataset.Counts();

  std::map<std::string, std::size_t> seen;
  std::unordered_map<std::string, bool> generated_by_id;
  for (const Review& r : dataset.reviews) {
    ++seen[r.id];
    generated_by_id[r.id] = r.provenance.generated;
  }
  for (const Review& r : dataset.reviews) {
    auto it = seen.find(r.id);
    if (it->second > 1) {
      report.findings.push_back({FindingKind::kDuplicateId, r.id,
                                 "id occurs " + std::to_string(it->second) + " times"});
      it->second = 0;  // report once
    }
    if (Trim(r.text).empty()) {
      report.findings.push_back({FindingKind::kEmptyText, r.id, "text is blank"});
    }
    if (r.provenance.generated) {
      if (r.provenance.seed_id.empty()) {
        report.findings.push_back(
            {FindingKind::kMissingSeedId, r.id, "generated review without seed id"});
      } else if (auto seed = generated_by_id.find(r.provenance.seed_id);
                 seed != generated_by_id.end() && seed->second) {
        report.findings.push_back({FindingKind::kSeedIsGenerated, r.id,
                                   "seed " + r.provenance.seed_id +
                                       " is itself a generated review"});
      }
    }
  }
  return report;
}

nlohmann::ordered_json ValidationReportToJson(const ValidationReport& report) {
  nlohmann::ordered_json j;
  j["total"] = report.total;
  j["histogram"] = {{"real", report.histogram.real}, {"fake", report.histogram.fake}};
  j["ok"] = report.ok();
  j["findings"] = nlohmann::ordered_json::array();
  for (const auto& f : report.findings) {
    j["findings"].push_back(
        {{"kind", FindingKindName(f.kind)}, {"review_id", f.review_id}, {"detail", f.detail}});
  }
  return j;
}

}  // namespace revforge::corpus
