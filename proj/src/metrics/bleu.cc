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

#include "revforge/metrics/bleu.h"

#include <cmath>
#include <limits>
#include <map>

#include "revforge/common/error.h"

namespace revforge::metrics {
namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, std::size_t> CountNgrams(const std::vector<std::string>& tokens,
                                         std::size_t n) {
  std::map<Ngram, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::vector<std::string> SplitOnSpace(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t cp : DecodeUtf8(text)) {
    if (IsSpace(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      AppendUtf8(current, cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace

std::vector<std::string> BleuTokens(std::string_view text, Language language,
                                    BleuTokenization tokenization) {
  if (tokenization == BleuTokenization::kWhitespace) return SplitOnSpace(text);

  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(AsciiLower(current));
    current.clear();
  };
  for (char32_t cp : DecodeUtf8(text)) {
    if (IsSpace(cp)) {
      flush();
      continue;
    }
    if (language == Language::kChinese || IsPunctuation(cp)) {
      flush();
      std::string single;
      AppendUtf8(single, cp);
      tokens.push_back(AsciiLower(single));
      continue;
    }
    AppendUtf8(current, cp);
  }
  flush();
  return tokens;
}

nlohmann::ordered_json BleuResultToJson(const BleuResult& r) {
  nlohmann::ordered_json precisions = nlohmann::ordered_json::array();
  for (const auto& p : r.precisions) {
    precisions.push_back({{"matched", p.matched}, {"total", p.total}});
  }
  return {{"score", r.score},
          {"precisions", precisions},
          {"brevity_penalty", r.brevity_penalty},
          {"candidate_length", r.candidate_length},
          {"reference_length", r.reference_length},
          {"epsilon", r.epsilon}};
}

BleuResult Bleu(std::string_view candidate, std::string_view reference, Language language,
                BleuTokenization tokenization) {
  const auto cand = BleuTokens(candidate, language, tokenization);
  const auto ref = BleuTokens(reference, language, tokenization);
  if (cand.empty() || ref.empty()) {
    throw ContractError("BLEU needs a non-empty candidate and reference");
  }

  BleuResult result;
  result.epsilon = std::numeric_limits<double>::min();
  result.candidate_length = cand.size();
  result.reference_length = ref.size();

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto cand_counts = CountNgrams(cand, n);
    const auto ref_counts = CountNgrams(ref, n);
    NgramPrecision& p = result.precisions[n - 1];
    for (const auto& [gram, count] : cand_counts) {
      p.total += count;
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) p.matched += std::min(count, it->second);
    }
    log_sum += 0.25 * std::log(std::max(p.value(), result.epsilon));
  }

  const auto c = static_cast<double>(cand.size());
  const auto r = static_cast<double>(ref.size());
  result.brevity_penalty = c < r ? std::exp(1.0 - r / c) : 1.0;
  result.score = result.brevity_penalty * std::exp(log_sum);
  return result;
}

}  // namespace revforge::metrics
