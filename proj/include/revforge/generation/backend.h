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

#ifndef REVFORGE_GENERATION_BACKEND_H_
#define REVFORGE_GENERATION_BACKEND_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "revforge/generation/backend_config.h"
#include "revforge/generation/http_transport.h"
#include "revforge/generation/prompt.h"

namespace revforge::generation {

// One request/response exchange, kept so a generation run can be replayed
// and audited. Secrets never appear here.
struct CompletionRecord {
  std::string backend;  // endpoint, or "mock://"
  std::string prompt;
  int requested = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> raw;       // texts as returned
  std::vector<std::string> accepted;  // after first-sentence truncation
};

nlohmann::ordered_json CompletionRecordToJson(const CompletionRecord& record);

// Candidate generator for one gap. Implementations must be safe to call
// from several threads at once. Generation is label-blind: nothing here
// ever sees a review label.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;

  // Returns exactly k non-empty single-sentence candidates, in the order the
  // backend produced them. Appends one record per exchange to `log` when
  // given. Throws ContractError for k < 1.
  virtual std::vector<std::string> Complete(const InfillPrompt& prompt, int k,
                                            std::uint64_t seed,
                                            std::vector<CompletionRecord>* log) const = 0;
};

// Deterministic test double. Each candidate is a pure function of
// (hash(prompt.rendered), seed, index) over a fixed per-language phrase bank,
// so outputs are identical on every platform.
class MockBackend final : public CompletionBackend {
 public:
  std::vector<std::string> Complete(const InfillPrompt& prompt, int k,
                                    std::uint64_t seed,
                                    std::vector<CompletionRecord>* log) const override;

  // Every sentence the bank can produce for `language`, for exhaustive checks.
  static std::vector<std::string> EnumerateBank(Language language);
};

std::vector<std::string> MockComplete(const InfillPrompt& prompt, int k,
                                      std::uint64_t seed);

// OpenAI-style completions client:
//   POST {endpoint}/v1/completions
//   {model, prompt, n, max_tokens, temperature, seed}
//   -> {choices: [{text, index}, ...]}
// Each returned text is cut to its first sentence. When fewer than k usable
// candidates arrive, the missing ones are requested again (up to
// max_retries extra rounds) before giving up with ProtocolError.
class HttpCompletionBackend final : public CompletionBackend {
 public:
  explicit HttpCompletionBackend(BackendConfig config);

  std::vector<std::string> Complete(const InfillPrompt& prompt, int k,
                                    std::uint64_t seed,
                                    std::vector<CompletionRecord>* log) const override;

 private:
  HttpJsonClient client_;
};

// "mock://..." gives a MockBackend, http(s) endpoints an HttpCompletionBackend.
std::unique_ptr<CompletionBackend> MakeCompletionBackend(const BackendConfig& config);

// Convenience wrapper: builds the backend for `config` and asks it for k
// candidates.
std::vector<std::string> Complete(const InfillPrompt& prompt, int k,
                                  const BackendConfig& config, std::uint64_t seed,
                                  std::vector<CompletionRecord>* log = nullptr);

// Ten candidates per gap unless configured otherwise.
inline constexpr int kDefaultFanOut = 10;

}  // namespace revforge::generation

#endif  // REVFORGE_GENERATION_BACKEND_H_
