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

#ifndef REVFORGE_COMMON_TEXT_H_
#define REVFORGE_COMMON_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace revforge {

enum class Language { kEnglish, kChinese };

// Accepts "en" and "zh". Anything else throws ConfigError listing the
// supported tags.
Language ParseLanguage(std::string_view tag);
bool IsSupportedLanguageTag(std::string_view tag);
std::string_view LanguageTag(Language language);

// Lenient UTF-8 decoding: malformed sequences become U+FFFD.
std::u32string DecodeUtf8(std::string_view text);
void AppendUtf8(std::string& out, char32_t code_point);
std::string EncodeUtf8(std::u32string_view text);

bool IsSpace(char32_t c);
// ASCII punctuation (except '_'), Latin-1 punctuation, general punctuation,
// CJK symbols and punctuation, and full-width punctuation forms.
bool IsPunctuation(char32_t c);
bool IsAsciiAlnum(char32_t c);

std::string Trim(std::string_view text);
// Every run of whitespace becomes one ASCII space; leading and trailing
// whitespace is removed.
std::string CollapseWhitespace(std::string_view text);
// Lowercases ASCII letters only; other bytes are copied unchanged.
std::string AsciiLower(std::string_view text);

// Lexical tokens used by the coherence scorer and the featurizer.
//   en: maximal runs of non-space, non-punctuation code points, ASCII-lowercased.
//   zh: every code point that is neither whitespace nor punctuation.
std::vector<std::string> WordTokens(std::string_view text, Language language);

}  // namespace revforge

#endif  // REVFORGE_COMMON_TEXT_H_
