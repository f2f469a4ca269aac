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

#include "revforge/common/text.h"

#include <array>

#include "revforge/common/error.h"

namespace revforge {

Language ParseLanguage(std::string_view tag) {
  if (tag == "en") return Language::kEnglish;
  if (tag == "zh") return Language::kChinese;
  throw ConfigError("unsupported language tag '" + std::string(tag) +
                    "'; supported tags: en, zh");
}

bool IsSupportedLanguageTag(std::string_view tag) {
  return tag == "en" || tag == "zh";
}

std::string_view LanguageTag(Language language) {
  return language == Language::kChinese ? "zh" : "en";
}

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      cp = lead & 0x1F;
      extra = 1;
    } else if ((lead & 0xF0) == 0xE0) {
      cp = lead & 0x0F;
      extra = 2;
    } else if ((lead & 0xF8) == 0xF0) {
      cp = lead & 0x07;
      extra = 3;
    } else {
      out.push_back(char32_t{0xFFFD});
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= text.size()) {
        ok = false;
        break;
      }
      const auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (!ok) {
      out.push_back(char32_t{0xFFFD});
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) AppendUtf8(out, cp);
  return out;
}

bool IsSpace(char32_t c) {
  switch (c) {
    case 0x0009:
    case 0x000A:
    case 0x000B:
    case 0x000C:
    case 0x000D:
    case 0x0020:
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
    case 0xFEFF:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

constexpr std::array<Range, 13> kPunctuationRanges = {{
    {0x00A1, 0x00A9},
    {0x00AB, 0x00B4},
    {0x00B6, 0x00B9},
    {0x00BB, 0x00BF},
    {0x2010, 0x2027},
    {0x2030, 0x205E},
    {0x3001, 0x3003},
    {0x3008, 0x3011},
    {0x3014, 0x301F},
    {0xFE10, 0xFE1F},
    {0xFE30, 0xFE4F},
    {0xFF01, 0xFF0F},
    {0xFF1A, 0xFF20},
}};

}  // namespace

bool IsPunctuation(char32_t c) {
  if (c < 0x80) {
    if (c == U'_') return false;
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  if ((c >= 0xFF3B && c <= 0xFF40 && c != 0xFF3F) ||
      (c >= 0xFF5B && c <= 0xFF65)) {
    return true;
  }
  for (const Range& r : kPunctuationRanges) {
    if (c >= r.lo && c <= r.hi) return true;
  }
  return false;
}

bool IsAsciiAlnum(char32_t c) {
  return (c >= U'0' && c <= U'9') || (c >= U'a' && c <= U'z') ||
         (c >= U'A' && c <= U'Z');
}

std::string Trim(std::string_view text) {
  const std::u32string cps = DecodeUtf8(text);
  std::size_t begin = 0;
  std::size_t end = cps.size();
  while (begin < end && IsSpace(cps[begin])) ++begin;
  while (end > begin && IsSpace(cps[end - 1])) --end;
  return EncodeUtf8(std::u32string_view(cps).substr(begin, end - begin));
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t cp : DecodeUtf8(text)) {
    if (IsSpace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    AppendUtf8(out, cp);
  }
  return out;
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> WordTokens(std::string_view text, Language language) {
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t cp : DecodeUtf8(text)) {
    const bool separator = IsSpace(cp) || IsPunctuation(cp);
    if (language == Language::kChinese) {
      if (!separator) {
        std::string token;
        AppendUtf8(token, cp);
        tokens.push_back(AsciiLower(token));
      }
      continue;
    }
    if (separator) {
      if (!current.empty()) tokens.push_back(AsciiLower(current));
      current.clear();
    } else {
      AppendUtf8(current, cp);
    }
  }
  if (!current.empty()) tokens.push_back(AsciiLower(current));
  return tokens;
}

}  // namespace revforge
