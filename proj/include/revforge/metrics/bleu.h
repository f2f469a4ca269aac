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

#ifndef REVFORGE_METRICS_BLEU_H_
#define REVFORGE_METRICS_BLEU_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revforge/common/text.h"

namespace revforge::metrics {

enum class BleuTokenization {
  // en: lowercase; each run of word characters is a token and each
  // punctuation mark is a token of its own. zh: one token per non-space
  // character, punctuation included.
  kDefault,
  // Plain whitespace split, case preserved (both languages).
  kWhitespace,
};

std::vector<std::string> BleuTokens(std::string_view text, Language language,
                                    BleuTokenization tokenization = BleuTokenization::kDefault);

struct NgramPrecision {
  std::size_t matched = 0;  // clipped
  std::size_t total = 0;
  double value() const {
    return total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
  }
};

struct BleuResult {
  double score = 0.0;
  std::array<NgramPrecision, 4> precisions;
  double brevity_penalty = 1.0;
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
  // Zero precisions are raised to this before the geometric mean.
  double epsilon = 0.0;
};

nlohmann::ordered_json BleuResultToJson(const BleuResult& result);

// Sentence-level BLEU-4 with uniform weights. Throws ContractError if
// either side is empty or tokenizes to nothing.
BleuResult Bleu(std::string_view candidate, std::string_view reference, Language language,
                BleuTokenization tokenization = BleuTokenization::kDefault);

}  // namespace revforge::metrics

#endif  // REVFORGE_METRICS_BLEU_H_
