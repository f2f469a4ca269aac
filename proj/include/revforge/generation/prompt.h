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

#ifndef REVFORGE_GENERATION_PROMPT_H_
#define REVFORGE_GENERATION_PROMPT_H_

#include <string>
#include <string_view>

#include "revforge/common/text.h"

namespace revforge::generation {

// A fill-in-the-middle request: the sentence before the gap, the sentence
// after it, and the rendered template the model sees.
struct InfillPrompt {
  std::string left_context;
  std::string right_context;
  Language language = Language::kEnglish;
  std::string rendered;
};

std::string_view SlotMarker(Language language);

// Renders the fixed per-language template:
//   en: "Review so far: {left} [MISSING SENTENCE] {right}\nWrite the missing sentence:"
//   zh: "已有评论：{left}[缺失句子]{right}\n请写出缺失的句子："
// Blank contexts, or contexts that already contain the slot marker, throw
// ContractError. An unsupported language tag throws ConfigError.
InfillPrompt BuildInfillPrompt(std::string_view left, std::string_view right,
                               std::string_view language_tag);
InfillPrompt BuildInfillPrompt(std::string_view left, std::string_view right,
                               Language language);

}  // namespace revforge::generation

#endif  // REVFORGE_GENERATION_PROMPT_H_
