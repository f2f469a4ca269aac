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

#include "revforge/corpus/csv.h"

#include "revforge/common/error.h"

namespace revforge::corpus {

bool CsvReader::Next(CsvRecord& record) {
  if (!started_) {
    started_ = true;
    if (in_.peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(in_.gcount() == 3 && static_cast<unsigned char>(bom[1]) == 0xBB &&
            static_cast<unsigned char>(bom[2]) == 0xBF)) {
        in_.clear();
        in_.seekg(0);
      }
    }
  }

  // Skip blank lines between records.
  while (true) {
    const int c = in_.peek();
    if (c == std::char_traits<char>::eof()) return false;
    if (c == '\r') {
      in_.get();
      continue;
    }
    if (c == '\n') {
      in_.get();
      ++line_;
      continue;
    }
    break;
  }

  record.line = line_;
  record.fields.clear();
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  while (true) {
    const int c = in_.get();
    if (c == std::char_traits<char>::eof()) {
      if (in_quotes) {
        throw DataError("line " + std::to_string(record.line) +
                        ": unterminated quoted field");
      }
      record.fields.push_back(std::move(field));
      return true;
    }
    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (c == '"' && field.empty() && !field_was_quoted) {
      in_quotes = true;
      field_was_quoted = true;
    } else if (c == ',') {
      record.fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else if (c == '\r' && in_.peek() == '\n') {
      // handled with the '\n'
    } else if (c == '\n') {
      ++line_;
      record.fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(static_cast<char>(c));
    }
  }
}

std::string CsvEscape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace revforge::corpus
