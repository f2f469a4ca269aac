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

#ifndef REVFORGE_CORPUS_CSV_H_
#define REVFORGE_CORPUS_CSV_H_

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace revforge::corpus {

struct CsvRecord {
  std::size_t line = 0;  // physical line the record starts on, 1-based
  std::vector<std::string> fields;
};

// RFC 4180 reader: comma separated, '"' quoting with "" escapes, quoted
// fields may span lines, CRLF or LF line ends. A UTF-8 BOM at the start of
// the stream is skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. Throws DataError on an unterminated quote.
  bool Next(CsvRecord& record);

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  bool started_ = false;
};

// Quotes a field when it contains a comma, quote or line break.
std::string CsvEscape(const std::string& field);

}  // namespace revforge::corpus

#endif  // REVFORGE_CORPUS_CSV_H_
