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

#ifndef REVFORGE_CORPUS_VALIDATE_H_
#define REVFORGE_CORPUS_VALIDATE_H_

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revforge/corpus/review.h"

namespace revforge::corpus {

enum class FindingKind {
  kDuplicateId,
  kEmptyText,
  kMissingSeedId,
  kSeedIsGenerated,
};

std::string_view FindingKindName(FindingKind kind);

struct ValidationFinding {
  FindingKind kind;
  std::string review_id;
  std::string detail;
};

struct ValidationReport {
  std::size_t total = 0;
  LabelCounts histogram;
  std::vector<ValidationFinding> findings;

  bool ok() const { return findings.empty(); }
  std::size_t Count(FindingKind kind) const;
};

// Never throws; every violation is reported with the offending review id.
// A duplicated id yields one finding however often it repeats.
ValidationReport Validate(const LabeledDataset& dataset);

nlohmann::ordered_json ValidationReportToJson(const ValidationReport& report);

}  // namespace revforge::corpus

#endif  // REVFORGE_CORPUS_VALIDATE_H_
