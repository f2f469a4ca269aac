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

#include "revforge/generation/prompt.h"

#include "revforge/common/error.h"

namespace revforge::generation {
namespace {

constexpr std::string_view kEnglishMarker = "[MISSING SENTENCE]";
constexpr std::string_view kChineseMarker = "[缺失句子]";

}  // namespace

std::string_view SlotMarker(Language language) {
  return language == Language::kChinese ? kChineseMarker : kEnglishMarker;
}

InfillPrompt BuildInfillPrompt(std::string_view left, std::string_view right,
                               std::string_view language_tag) {
  return BuildInfillPrompt(left, right, ParseLanguage(language_tag));
}

InfillPrompt BuildInfillPrompt(std::string_view left, std::string_view right,
                               Language language) {
  if (Trim(left).empty() || Trim(right).empty()) {
    throw ContractError("infill prompt needs non-empty left and right contexts");
  }
  const std::string_view marker = SlotMarker(language);
  if (left.find(marker) != std::string_view::npos ||
      right.find(marker) != std::string_view::npos) {
    throw ContractError("infill context already contains the slot marker " +
                        std::string(marker));
  }
  InfillPrompt prompt;
  prompt.left_context = std::string(left);
  prompt.right_context = std::string(right);
  prompt.language = language;
  if (language == Language::kChinese) {
    prompt.rendered = "已有评论：" + prompt.left_context + std::string(marker) +
                      prompt.right_context + "\n请写出缺失的句子：";
  } else {
    prompt.rendered = "Review so far: " + prompt.left_context + " " +
                      std::string(marker) + " " + prompt.right_context +
                      "\nWrite the missing sentence:";
  }
  return prompt;
}

}  // namespace revforge::generation
