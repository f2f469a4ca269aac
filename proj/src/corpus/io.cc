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

#include "revforge/corpus/io.h"

#include <fstream>
#include <set>
#include <vector>

#include "revforge/common/error.h"
#include "revforge/common/text.h"
#include "revforge/corpus/csv.h"

namespace revforge::corpus {
namespace {

using nlohmann::json;

std::string RecordError(std::size_t line, std::string_view field,
                        std::string_view problem) {
  return "line " + std::to_string(line) + ": field '" + std::string(field) +
         "': " + std::string(problem);
}

std::string DefaultLanguage(Schema schema, const LoadOptions& options) {
  if (!options.language.empty()) return options.language;
  return schema == Schema::kDianping ? "zh" : "en";
}

class LabelNormalizer {
 public:
  LabelNormalizer(Schema schema, const LoadOptions& options)
  {
    const LabelTable source =
        options.label_table ? *options.label_table : DefaultLabelTable(schema);
    for (const auto& [token, label] : source) {
      table_.emplace(AsciiLower(Trim(token)), label);
    }
    for (const auto& [token, label] : table_) {
      accepted_ += (accepted_.empty() ? "" : ", ") + token;
    }
  }

  Label Normalize(std::string_view raw, std::size_t line,
                  std::string_view field) const {
    const std::string token = AsciiLower(Trim(raw));
    const auto it = table_.find(token);
    if (it == table_.end()) {
      throw DataError(RecordError(line, field,
                                  "unknown label token '" + std::string(raw) +
                                      "'; accepted tokens: " + accepted_));
    }
    return it->second;
  }

 private:
  LabelTable table_;
  std::string accepted_;
};

std::string RequireString(const json& record, std::string_view field,
                          std::size_t line) {
  const auto it = record.find(field);
  if (it == record.end() || it->is_null()) {
    throw DataError(RecordError(line, field, "missing"));
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw DataError(RecordError(line, field, "must be a string"));
}

std::optional<std::string> OptionalString(const json& object,
                                          std::string_view field,
                                          std::size_t line,
                                          std::string_view display) {
  const auto it = object.find(field);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw DataError(RecordError(line, display, "must be a string"));
  }
  return it->get<std::string>();
}

int ParseRating(std::string_view raw, std::size_t line, std::string_view field) {
  const std::string text = Trim(raw);
  std::size_t consumed = 0;
  double value = 0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  const int rating = static_cast<int>(value);
  if (text.empty() || consumed != text.size() || rating != value ||
      rating < 1 || rating > 5) {
    throw DataError(RecordError(line, field,
                                "rating must be an integer 1-5, got '" +
                                    std::string(raw) + "'"));
  }
  return rating;
}

ReviewMeta ParseMeta(const json& record, std::size_t line) {
  ReviewMeta meta;
  const auto it = record.find("meta");
  if (it == record.end() || it->is_null()) return meta;
  if (!it->is_object()) throw DataError(RecordError(line, "meta", "must be an object"));
  const json& m = *it;
  if (const auto r = m.find("rating"); r != m.end() && !r->is_null()) {
    if (!r->is_number_integer()) {
      throw DataError(RecordError(line, "meta.rating", "must be an integer 1-5"));
    }
    meta.rating = ParseRating(std::to_string(r->get<long long>()), line, "meta.rating");
  }
  meta.user = OptionalString(m, "user", line, "meta.user");
  meta.date = OptionalString(m, "date", line, "meta.date");
  meta.ip = OptionalString(m, "ip", line, "meta.ip");
  return meta;
}

void CheckText(const Review& review, std::size_t line, std::string_view field,
               const LoadOptions& options) {
  if (options.require_text && Trim(review.text).empty()) {
    throw DataError(RecordError(line, field, "review text is empty"));
  }
}

Review ParseJsonRecord(const json& record, std::size_t line, Schema schema,
                       const LoadOptions& options, const LabelNormalizer& labels,
                       const std::string& name, const std::string& language) {
  if (!record.is_object()) {
    throw DataError("line " + std::to_string(line) + ": record is not a JSON object");
  }
  Review review;
  if (schema == Schema::kGeneric || record.contains("id")) {
    review.id = RequireString(record, "id", line);
  } else {
    review.id = name + "-" + std::to_string(line);
  }
  if (review.id.empty()) throw DataError(RecordError(line, "id", "empty id"));
  review.text = RequireString(record, "text", line);
  CheckText(review, line, "text", options);
  review.label = labels.Normalize(RequireString(record, "label", line), line, "label");

  const std::string provenance =
      OptionalString(record, "provenance", line, "provenance").value_or("original");
  if (provenance == "generated") {
    std::string seed_id = RequireString(record, "seed_id", line);
    if (seed_id.empty()) throw DataError(RecordError(line, "seed_id", "empty seed id"));
    const std::string seed_label = RequireString(record, "seed_label", line);
    if (seed_label != "real" && seed_label != "fake") {
      throw DataError(RecordError(line, "seed_label",
                                  "unknown label token '" + seed_label +
                                      "'; accepted tokens: fake, real"));
    }
    review.provenance = Provenance::GeneratedFrom(std::move(seed_id), ParseLabelName(seed_label));
  } else if (provenance != "original") {
    throw DataError(RecordError(line, "provenance",
                                "expected 'original' or 'generated', got '" + provenance + "'"));
  }
  review.dataset = OptionalString(record, "dataset", line, "dataset").value_or(name);
  review.language = OptionalString(record, "language", line, "language").value_or(language);
  review.meta = ParseMeta(record, line);
  return review;
}

std::size_t ColumnIndex(const std::vector<std::string>& header,
                        std::string_view column) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (Trim(header[i]) == column) return i;
  }
  std::string have;
  for (const auto& h : header) have += (have.empty() ? "" : ",") + h;
  throw DataError("line 1: CSV header lacks column '" + std::string(column) +
                  "' (header: " + have + ")");
}

}  // namespace

std::string_view SchemaName(Schema schema) {
  switch (schema) {
    case Schema::kAmazon:
      return "amazon";
    case Schema::kDerev:
      return "derev";
    case Schema::kYelp:
      return "yelp";
    case Schema::kDianping:
      return "dianping";
    case Schema::kGeneric:
      break;
  }
  return "generic";
}

Schema ParseSchema(std::string_view name) {
  for (Schema s : {Schema::kAmazon, Schema::kDerev, Schema::kYelp,
                   Schema::kDianping, Schema::kGeneric}) {
    if (SchemaName(s) == name) return s;
  }
  throw ConfigError("unknown schema '" + std::string(name) +
                    "'; accepted: amazon, derev, yelp, dianping, generic");
}

LabelTable DefaultLabelTable(Schema schema) {
  LabelTable table{{"real", Label::kReal}, {"fake", Label::kFake}};
  switch (schema) {
    case Schema::kAmazon:
      table.insert({{"__label1__", Label::kFake}, {"__label2__", Label::kReal},
                    {"cg", Label::kFake}, {"or", Label::kReal}});
      break;
    case Schema::kDerev:
      table.insert({{"deceptive", Label::kFake}, {"truthful", Label::kReal},
                    {"genuine", Label::kReal}});
      break;
    case Schema::kYelp:
      table.insert({{"spam", Label::kFake}, {"filtered", Label::kFake},
                    {"legitimate", Label::kReal}, {"recommended", Label::kReal},
                    {"-1", Label::kFake}, {"1", Label::kReal},
                    {"y", Label::kFake}, {"n", Label::kReal}});
      break;
    case Schema::kDianping:
      table.insert({{"filtered", Label::kFake}, {"unfiltered", Label::kReal},
                    {"spam", Label::kFake}, {"legitimate", Label::kReal}});
      break;
    case Schema::kGeneric:
      break;
  }
  return table;
}

LabeledDataset ReadJsonLines(std::istream& in, Schema schema,
                             const LoadOptions& options) {
  LabeledDataset ds;
  ds.name = options.name;
  ds.language = DefaultLanguage(schema, options);
  const LabelNormalizer labels(schema, options);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (Trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed JSON (" +
                      e.what() + ")");
    }
    ds.reviews.push_back(ParseJsonRecord(record, line_no, schema, options, labels,
                                         ds.name, ds.language));
  }
  if (!ds.reviews.empty()) ds.language = ds.reviews.front().language;
  return ds;
}

LabeledDataset ReadCsv(std::istream& in, Schema schema, const LoadOptions& options) {
  if (schema != Schema::kYelp && schema != Schema::kDianping) {
    throw DataError("CSV input is accepted for the yelp and dianping schemas only");
  }
  LabeledDataset ds;
  ds.name = options.name;
  ds.language = DefaultLanguage(schema, options);
  const LabelNormalizer labels(schema, options);

  CsvReader reader(in);
  CsvRecord header;
  if (!reader.Next(header)) return ds;

  const bool yelp = schema == Schema::kYelp;
  const std::size_t text_col = ColumnIndex(header.fields, yelp ? "Review" : "text");
  const std::size_t label_col = ColumnIndex(header.fields, yelp ? "Label" : "label");
  const std::size_t user_col = ColumnIndex(header.fields, yelp ? "User_id" : "user");
  const std::size_t rating_col = ColumnIndex(header.fields, yelp ? "Rating" : "star");
  const std::size_t date_col = yelp ? ColumnIndex(header.fields, "Date") : 0;
  const std::size_t ip_col = yelp ? 0 : ColumnIndex(header.fields, "IP");
  if (yelp) ColumnIndex(header.fields, "Product_id");

  CsvRecord record;
  std::size_t index = 0;
  while (reader.Next(record)) {
    ++index;
    if (record.fields.size() != header.fields.size()) {
      throw DataError("line " + std::to_string(record.line) + ": expected " +
                      std::to_string(header.fields.size()) + " fields, got " +
                      std::to_string(record.fields.size()));
    }
    const auto& f = record.fields;
    Review review;
    review.id = ds.name + "-" + std::to_string(index);
    review.text = f[text_col];
    CheckText(review, record.line, header.fields[text_col], options);
    review.label = labels.Normalize(f[label_col], record.line, header.fields[label_col]);
    review.dataset = ds.name;
    review.language = ds.language;
    if (!Trim(f[user_col]).empty()) review.meta.user = f[user_col];
    if (!Trim(f[rating_col]).empty()) {
      review.meta.rating = ParseRating(f[rating_col], record.line, header.fields[rating_col]);
    }
    if (yelp && !Trim(f[date_col]).empty()) review.meta.date = f[date_col];
    if (!yelp && !Trim(f[ip_col]).empty()) review.meta.ip = f[ip_col];
    ds.reviews.push_back(std::move(review));
  }
  return ds;
}

LabeledDataset LoadDataset(const std::filesystem::path& path, Schema schema,
                           const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset " + path.string());
  LoadOptions resolved = options;
  if (resolved.name.empty()) resolved.name = path.stem().string();
  try {
    if (path.extension() == ".csv") return ReadCsv(in, schema, resolved);
    return ReadJsonLines(in, schema, resolved);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json ReviewToJson(const Review& review) {
  nlohmann::ordered_json j;
  j["id"] = review.id;
  j["text"] = review.text;
  j["label"] = LabelName(review.label);
  j["provenance"] = review.provenance.generated ? "generated" : "original";
  if (review.provenance.generated) {
    j["seed_id"] = review.provenance.seed_id;
    j["seed_label"] = LabelName(review.provenance.seed_label);
  }
  j["dataset"] = review.dataset;
  j["language"] = review.language;
  if (!review.meta.empty()) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    if (review.meta.rating) meta["rating"] = *review.meta.rating;
    if (review.meta.user) meta["user"] = *review.meta.user;
    if (review.meta.date) meta["date"] = *review.meta.date;
    if (review.meta.ip) meta["ip"] = *review.meta.ip;
    j["meta"] = std::move(meta);
  }
  return j;
}

void WriteJsonLines(const LabeledDataset& dataset, std::ostream& out) {
  for (const Review& review : dataset.reviews) {
    out << ReviewToJson(review).dump(-1, ' ', false,
                                     nlohmann::json::error_handler_t::replace)
        << '\n';
  }
}

void SaveDataset(const LabeledDataset& dataset, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write dataset " + path.string());
  WriteJsonLines(dataset, out);
  if (!out) throw DataError("failed writing dataset " + path.string());
}

}  // namespace revforge::corpus
