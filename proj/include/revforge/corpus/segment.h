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

#ifndef REVFORGE_CORPUS_SEGMENT_H_
#define REVFORGE_CORPUS_SEGMENT_H_

#include <string>
#include <string_view>
#include <vector>

#include "revforge/common/text.h"
#include "revforge/corpus/review.h"

namespace revforge::corpus {

// Rule-based sentence splitter.
//   en: a sentence ends at '.', '!' or '?' followed by whitespace or the end
//       of the text; the terminator stays with its sentence.
//   zh: a sentence ends after a run of '。', '！' or '？'.
// Whitespace inside each sentence is collapsed. A text without terminators
// is one sentence. Throws ContractError if the text is blank.
SentenceSequence SentenceSegment(std::string_view text, Language language);

// Inverse of SentenceSegment up to NormalizeForSegmentation: single space
// between sentences for en, nothing for zh.
std::string JoinSentences(const std::vector<std::string>& sentences,
                          Language language);

// The normalisation SentenceSegment/JoinSentences round-trips to: collapsed
// whitespace, and for zh no space directly after a sentence terminator.
std::string NormalizeForSegmentation(std::string_view text, Language language);

}  // namespace revforge::corpus

#endif  // REVFORGE_CORPUS_SEGMENT_H_
