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

#include "revforge/corpus/review.h"

#include "revforge/common/error.h"

namespace revforge::corpus {

std::string_view LabelName(Label label) {
  return label == Label::kFake ? "fake" : "real";
}

Label ParseLabelName(std::string_view name) {
  if (name == "real") return Label::kReal;
  if (name == "fake") return Label::kFake;
  throw DataError("unknown label '" + std::string(name) +
                  "'; accepted: real, fake");
}

std::string_view SubsetName(Subset subset) {
  switch (subset) {
    case Subset::kReal:
      return "real";
    case Subset::kFake:
      return "fake";
    case Subset::kAll:
      break;
  }
  return "all";
}

Subset ParseSubsetName(std::string_view name) {
  if (name == "real") return Subset::kReal;
  if (name == "fake") return Subset::kFake;
  if (name == "all") return Subset::kAll;
  throw ConfigError("unknown subset '" + std::string(name) +
                    "'; accepted: real, fake, all");
}

bool SubsetAdmits(Subset subset, Label label) {
  switch (subset) {
    case Subset::kReal:
      return label == Label::kReal;
    case Subset::kFake:
      return label == Label::kFake;
    case Subset::kAll:
      break;
  }
  return true;
}

LabelCounts LabeledDataset::Counts() const {
  LabelCounts counts;
  for (const Review& r : reviews) {
    if (r.label == Label::kFake) {
      ++counts.fake;
    } else {
      ++counts.real;
    }
  }
  return counts;
}

}  // namespace revforge::corpus
