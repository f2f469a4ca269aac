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

#ifndef REVFORGE_COHERENCE_COHERENCE_H_
#define REVFORGE_COHERENCE_COHERENCE_H_

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revforge/common/text.h"
#include "revforge/generation/backend_config.h"
#include "revforge/generation/http_transport.h"

namespace revforge::coherence {

// Higher means the candidate fits its surroundings better. Unbounded; the
// lexical scorer stays in [-0.5, 1].
struct CoherenceScore {
  double value = 0.0;
  friend auto operator<=>(const CoherenceScore&, const CoherenceScore&) = default;
};

using Sentences = std::span<const std::string>;

class Scorer {
 public:
  virtual ~Scorer() = default;
  // `before` and `after` are the sentences on either side of the gap, in
  // reading order. Their union must be non-empty and the candidate must not
  // be blank (ContractError otherwise).
  virtual CoherenceScore Score(Sentences before, std::string_view candidate,
                               Sentences after, Language language) const = 0;
};

// Transparent lexical-cohesion scorer:
//   cos(tf(candidate), tf(nearest before + nearest after))
//     - repetition_penalty * repeated_trigram_fraction(candidate)
// over WordTokens (lowercased words for en, characters for zh).
class LexicalScorer final : public Scorer {
 public:
  explicit LexicalScorer(double repetition_penalty = 0.5)
      : repetition_penalty_(repetition_penalty) {}

  CoherenceScore Score(Sentences before, std::string_view candidate, Sentences after,
                       Language language) const override;

  double repetition_penalty() const { return repetition_penalty_; }

 private:
  double repetition_penalty_;
};

// (trigram occurrences - distinct trigrams) / trigram occurrences; 0 when
// there are fewer than three tokens.
double RepeatedTrigramFraction(const std::vector<std::string>& tokens);

// Default scorer as a free function.
CoherenceScore Score(Sentences before, std::string_view candidate, Sentences after,
                     Language language);

// Served ranker:
//   POST {endpoint}/v1/coherence {before, candidate, after, language} -> {score}
class HttpScorer final : public Scorer {
 public:
  explicit HttpScorer(generation::BackendConfig config) : client_(std::move(config)) {}

  CoherenceScore Score(Sentences before, std::string_view candidate, Sentences after,
                       Language language) const override;

 private:
  generation::HttpJsonClient client_;
};

CoherenceScore ExternalScore(Sentences before, std::string_view candidate,
                             Sentences after, Language language,
                             const generation::BackendConfig& config);

struct RankResult {
  std::size_t best_index = 0;
  std::vector<CoherenceScore> scores;
};

// Scores every candidate; best_index is the argmax, ties going to the
// lowest index. Throws ContractError for an empty candidate list.
RankResult Rank(Sentences candidates, Sentences before, Sentences after,
                Language language, const Scorer& scorer);

struct ScorerConfig {
  enum class Kind { kLexical, kExternal };
  Kind kind = Kind::kLexical;
  double repetition_penalty = 0.5;
  generation::BackendConfig external;
};

ScorerConfig ScorerConfigFromJson(const nlohmann::json& j);
nlohmann::ordered_json ScorerConfigToJson(const ScorerConfig& config);
std::unique_ptr<Scorer> MakeScorer(const ScorerConfig& config);

}  // namespace revforge::coherence

#endif  // REVFORGE_COHERENCE_COHERENCE_H_
