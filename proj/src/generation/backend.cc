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

#include "revforge/generation/backend.h"

#include <array>
#include <string_view>

#include "revforge/common/error.h"
#include "revforge/common/hash.h"
#include "revforge/common/logging.h"
#include "revforge/corpus/segment.h"

namespace revforge::generation {
namespace {

constexpr std::array<std::string_view, 16> kEnglishSubjects = {
    "The staff",     "The food",     "This book",      "The room",
    "The author",    "The service",  "The price",      "The story",
    "Our waiter",    "The location", "The ending",     "The breakfast",
    "The characters", "The hotel",   "The dessert",    "The writing"};

constexpr std::array<std::string_view, 16> kEnglishPredicates = {
    "was friendly and quick",
    "felt a little overpriced",
    "kept me reading late into the night",
    "exceeded what I expected",
    "was better than the photos suggested",
    "could use some improvement",
    "made the whole visit worthwhile",
    "was exactly as described",
    "surprised me in a good way",
    "was disappointing at times",
    "deserves more attention",
    "left a lasting impression",
    "was clean and comfortable",
    "tasted fresh and well seasoned",
    "moved at a steady pace",
    "was easy to recommend to friends"};

constexpr std::array<std::string_view, 8> kEnglishClosers = {
    "",          " overall",          " this time",         " in my opinion",
    " as far as I can tell", " to be honest", " from start to finish",
    " for the most part"};

constexpr std::array<std::string_view, 16> kChineseSubjects = {
    "服务员", "这家店", "菜品", "价格", "环境",   "味道",   "老板",   "分量",
    "汤底",   "甜点",   "位置", "上菜速度", "小笼包", "装修", "性价比", "排队的人"};

constexpr std::array<std::string_view, 16> kChinesePredicates = {
    "很热情",     "还算实惠",   "比想象中好", "有点一般",
    "非常新鲜",   "挺干净的",   "值得推荐",   "让人印象深刻",
    "稍微有点慢", "一直很稳定", "比上次更好", "很符合大众口味",
    "确实不错",   "有待改进",   "让人满意",   "每天都很多"};

constexpr std::array<std::string_view, 8> kChineseClosers = {
    "",           "，总体来说还不错", "，下次还会再来", "，朋友们也都喜欢",
    "，周末人比较多", "，性价比很高", "，推荐大家试试", "，整体感觉挺好"};

std::string BankSentence(Language language, std::uint64_t h) {
  const std::size_t subject = h & 0xF;
  const std::size_t predicate = (h >> 4) & 0xF;
  const std::size_t closer = (h >> 8) & 0x7;
  const bool exclaim = ((h >> 11) & 0x3) == 0;  // one in four
  std::string out;
  if (language == Language::kChinese) {
    out.append(kChineseSubjects[subject]);
    out.append(kChinesePredicates[predicate]);
    out.append(kChineseClosers[closer]);
    out.append(exclaim ? "！" : "。");
  } else {
    out.append(kEnglishSubjects[subject]);
    out.push_back(' ');
    out.append(kEnglishPredicates[predicate]);
    out.append(kEnglishClosers[closer]);
    out.append(exclaim ? "!" : ".");
  }
  return out;
}

void CheckFanOut(int k) {
  if (k < 1) throw ContractError("fan-out k must be >= 1, got " + std::to_string(k));
}

}  // namespace

nlohmann::ordered_json CompletionRecordToJson(const CompletionRecord& r) {
  return {{"backend", r.backend}, {"prompt", r.prompt}, {"requested", r.requested},
          {"seed", r.seed},       {"raw", r.raw},       {"accepted", r.accepted}};
}

std::vector<std::string> MockBackend::Complete(const InfillPrompt& prompt, int k,
                                               std::uint64_t seed,
                                               std::vector<CompletionRecord>* log) const {
  CheckFanOut(k);
  const std::uint64_t base = HashCombine(Fnv1a64(prompt.rendered), seed);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    out.push_back(BankSentence(prompt.language,
                               HashCombine(base, static_cast<std::uint64_t>(i))));
  }
  if (log != nullptr) {
    log->push_back({"mock://", prompt.rendered, k, seed, out, out});
  }
  return out;
}

std::vector<std::string> MockBackend::EnumerateBank(Language language) {
  std::vector<std::string> all;
  for (std::uint64_t h = 0; h < (1u << 13); ++h) {
    if (((h >> 11) & 0x3) > 1) continue;  // only the two terminator variants
    all.push_back(BankSentence(language, h));
  }
  return all;
}

std::vector<std::string> MockComplete(const InfillPrompt& prompt, int k,
                                      std::uint64_t seed) {
  return MockBackend().Complete(prompt, k, seed, nullptr);
}

HttpCompletionBackend::HttpCompletionBackend(BackendConfig config)
    : client_(std::move(config)) {}

std::vector<std::string> HttpCompletionBackend::Complete(
    const InfillPrompt& prompt, int k, std::uint64_t seed,
    std::vector<CompletionRecord>* log) const {
  CheckFanOut(k);
  const BackendConfig& cfg = client_.config();
  std::vector<std::string> out;
  const int rounds = 1 + cfg.max_retries;
  for (int round = 0; round < rounds && static_cast<int>(out.size()) < k; ++round) {
    const int need = k - static_cast<int>(out.size());
    const std::uint64_t request_seed =
        round == 0 ? seed : HashCombine(seed, static_cast<std::uint64_t>(round));
    const nlohmann::json body = {{"model", cfg.model_name},
                                 {"prompt", prompt.rendered},
                                 {"n", need},
                                 {"max_tokens", cfg.max_tokens},
                                 {"temperature", cfg.temperature},
                                 {"seed", request_seed}};
    const nlohmann::json response = client_.PostJson("/v1/completions", body);
    const auto choices = response.find("choices");
    if (!response.is_object() || choices == response.end() || !choices->is_array()) {
      throw ProtocolError("completion response lacks a 'choices' array",
                          Excerpt(response.dump()));
    }
    CompletionRecord record{cfg.endpoint, prompt.rendered, need, request_seed, {}, {}};
    for (const auto& choice : *choices) {
      if (!choice.is_object() || !choice.contains("text") || !choice["text"].is_string()) {
        throw ProtocolError("completion choice without a string 'text'",
                            Excerpt(choice.dump()));
      }
      const std::string text = choice["text"].get<std::string>();
      record.raw.push_back(text);
      if (Trim(text).empty() || static_cast<int>(out.size()) >= k) continue;
      std::string first = corpus::SentenceSegment(text, prompt.language).sentences.front();
      record.accepted.push_back(first);
      out.push_back(std::move(first));
    }
    if (log != nullptr) log->push_back(std::move(record));
    if (static_cast<int>(out.size()) < k) {
      Log().info("{} returned {} of {} usable candidates; requesting the rest",
                 cfg.endpoint, out.size(), k);
    }
  }
  if (static_cast<int>(out.size()) < k) {
    throw ProtocolError("backend " + cfg.endpoint + " produced only " +
                            std::to_string(out.size()) + " of " + std::to_string(k) +
                            " usable candidates after " + std::to_string(rounds) +
                            " request(s)",
                        "");
  }
  return out;
}

std::unique_ptr<CompletionBackend> MakeCompletionBackend(const BackendConfig& config) {
  config.Validate();
  if (config.IsMock()) return std::make_unique<MockBackend>();
  return std::make_unique<HttpCompletionBackend>(config);
}

std::vector<std::string> Complete(const InfillPrompt& prompt, int k,
                                  const BackendConfig& config, std::uint64_t seed,
                                  std::vector<CompletionRecord>* log) {
  return MakeCompletionBackend(config)->Complete(prompt, k, seed, log);
}

}  // namespace revforge::generation
