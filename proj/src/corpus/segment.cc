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

#include "revforge/corpus/segment.h"

#include "revforge/common/error.h"

namespace revforge::corpus {
namespace {

bool IsEnglishTerminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

bool IsChineseTerminator(char32_t c) {
  return c == 0x3002 || c == 0xFF01 || c == 0xFF1F;  // 。！？
}

}  // namespace

SentenceSequence SentenceSegment(std::string_view text, Language language) {
  const std::u32string cps = DecodeUtf8(text);
  SentenceSequence out;
  out.language = std::string(LanguageTag(language));

  std::u32string current;
  auto flush = [&] {
    std::string sentence = CollapseWhitespace(EncodeUtf8(current));
    if (!sentence.empty()) out.sentences.push_back(std::move(sentence));
    current.clear();
  };

  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    current.push_back(c);
    const bool at_end = i + 1 == cps.size();
    if (language == Language::kChinese) {
      if (IsChineseTerminator(c) && (at_end || !IsChineseTerminator(cps[i + 1]))) {
        flush();
      }
    } else if (IsEnglishTerminator(c) && (at_end || IsSpace(cps[i + 1]))) {
      flush();
    }
  }
  flush();

  if (out.sentences.empty()) {
    throw ContractError("sentence segmentation needs non-blank text");
  }
  return out;
}

std::string JoinSentences(const std::vector<std::string>& sentences,
                          Language language) {
  std::string out;
  const std::string_view separator = language == Language::kChinese ? "" : " ";
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) out += separator;
    out += sentences[i];
  }
  return out;
}

std::string NormalizeForSegmentation(std::string_view text, Language language) {
  std::string collapsed = CollapseWhitespace(text);
  if (language != Language::kChinese) return collapsed;
  const std::u32string cps = DecodeUtf8(collapsed);
  std::u32string out;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] == U' ' && i > 0 && IsChineseTerminator(cps[i - 1])) continue;
    out.push_back(cps[i]);
  }
  return EncodeUtf8(out);
}

}  // namespace revforge::corpus
