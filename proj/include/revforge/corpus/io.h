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

#ifndef REVFORGE_CORPUS_IO_H_
#define REVFORGE_CORPUS_IO_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "revforge/corpus/review.h"

namespace revforge::corpus {

enum class Schema { kAmazon, kDerev, kYelp, kDianping, kGeneric };

std::string_view SchemaName(Schema schema);
Schema ParseSchema(std::string_view name);  // ConfigError on unknown names

// Raw label token (compared case-insensitively after trimming) to label.
using LabelTable = std::map<std::string, Label, std::less<>>;

// Built-in token tables. The source corpora never publish their raw label
// vocabularies, so these are configuration and can be replaced through
// LoadOptions::label_table.
LabelTable DefaultLabelTable(Schema schema);

struct LoadOptions {
  // Dataset name and Review::dataset tag; defaults to the file stem.
  std::string name;
  // Language tag for records that carry none; defaults per schema
  // (zh for dianping, en otherwise).
  std::string language;
  std::optional<LabelTable> label_table;
  // When false, blank review texts are kept so validate() can report them.
  bool require_text = true;
};

// JSON Lines for every schema (generic field names, schema label table);
// CSV (by .csv extension) for the yelp and dianping layouts. Throws
// DataError naming the line and field of the first bad record.
LabeledDataset LoadDataset(const std::filesystem::path& path, Schema schema,
                           const LoadOptions& options = {});

LabeledDataset ReadJsonLines(std::istream& in, Schema schema,
                             const LoadOptions& options);
LabeledDataset ReadCsv(std::istream& in, Schema schema,
                       const LoadOptions& options);

// Generic-schema serialisation; LoadDataset(SaveDataset(ds), kGeneric)
// reproduces every Review field.
nlohmann::ordered_json ReviewToJson(const Review& review);
void WriteJsonLines(const LabeledDataset& dataset, std::ostream& out);
void SaveDataset(const LabeledDataset& dataset,
                 const std::filesystem::path& path);

}  // namespace revforge::corpus

#endif  // REVFORGE_CORPUS_IO_H_
