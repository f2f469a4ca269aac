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

#ifndef REVFORGE_CORPUS_REVIEW_H_
#define REVFORGE_CORPUS_REVIEW_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revforge::corpus {

enum class Label { kReal, kFake };

std::string_view LabelName(Label label);  // "real" / "fake"
// Strict inverse of LabelName; throws DataError for anything else.
Label ParseLabelName(std::string_view name);

// Which slice of a dataset a recipe or generation pass selects.
enum class Subset { kReal, kFake, kAll };

std::string_view SubsetName(Subset subset);  // "real" / "fake" / "all"
Subset ParseSubsetName(std::string_view name);
bool SubsetAdmits(Subset subset, Label label);

// Generated reviews remember the original they were grown from. Whether a
// review is generated is provenance only; it never leaks into the label.
struct Provenance {
  bool generated = false;
  std::string seed_id;
  Label seed_label = Label::kReal;

  static Provenance Original() { return {}; }
  static Provenance GeneratedFrom(std::string seed_id, Label seed_label) {
    return {true, std::move(seed_id), seed_label};
  }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ReviewMeta {
  std::optional<int> rating;  // 1-5
  std::optional<std::string> user;
  std::optional<std::string> date;  // ISO-8601
  std::optional<std::string> ip;

  bool empty() const { return !rating && !user && !date && !ip; }
  friend bool operator==(const ReviewMeta&, const ReviewMeta&) = default;
};

struct Review {
  std::string id;
  std::string text;
  Label label = Label::kReal;
  Provenance provenance;
  std::string dataset;
  std::string language;
  ReviewMeta meta;

  friend bool operator==(const Review&, const Review&) = default;
};

struct LabelCounts {
  std::size_t real = 0;
  std::size_t fake = 0;
  std::size_t total() const { return real + fake; }
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct LabeledDataset {
  std::string name;
  std::string language;
  std::vector<Review> reviews;

  std::size_t size() const { return reviews.size(); }
  bool empty() const { return reviews.empty(); }
  LabelCounts Counts() const;
};

// An ordered list of non-empty sentences; see segment.h for how it is
// produced from text and joined back.
struct SentenceSequence {
  std::vector<std::string> sentences;
  std::string language;

  std::size_t size() const { return sentences.size(); }
  friend bool operator==(const SentenceSequence&,
                         const SentenceSequence&) = default;
};

}  // namespace revforge::corpus

#endif  // REVFORGE_CORPUS_REVIEW_H_
