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

#include "revforge/coherence/coherence.h"

#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "revforge/common/error.h"

namespace revforge::coherence {
namespace {

using TermCounts = std::map<std::string, double>;

TermCounts Count(const std::vector<std::string>& tokens) {
  TermCounts counts;
  for (const auto& t : tokens) counts[t] += 1.0;
  return counts;
}

double Cosine(const TermCounts& a, const TermCounts& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [term, weight] : a) {
    na += weight * weight;
    if (auto it = b.find(term); it != b.end()) dot += weight * it->second;
  }
  for (const auto& [term, weight] : b) nb += weight * weight;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

void CheckInputs(Sentences before, std::string_view candidate, Sentences after) {
  if (before.empty() && after.empty()) {
    throw ContractError("coherence scoring needs at least one context sentence");
  }
  if (Trim(candidate).empty()) throw ContractError("coherence candidate is blank");
}

}  // namespace

double RepeatedTrigramFraction(const std::vector<std::string>& tokens) {
  if (tokens.size() < 3) return 0.0;
  std::set<std::tuple<std::string, std::string, std::string>> distinct;
  const std::size_t total = tokens.size() - 2;
  for (std::size_t i = 0; i < total; ++i) {
    distinct.emplace(tokens[i], tokens[i + 1], tokens[i + 2]);
  }
  return static_cast<double>(total - distinct.size()) / static_cast<double>(total);
}

CoherenceScore LexicalScorer::Score(Sentences before, std::string_view candidate,
                                    Sentences after, Language language) const {
  CheckInputs(before, candidate, after);
  std::vector<std::string> context;
  if (!before.empty()) {
    auto left = WordTokens(before.back(), language);
    context.insert(context.end(), left.begin(), left.end());
  }
  if (!after.empty()) {
    auto right = WordTokens(after.front(), language);
    context.insert(context.end(), right.begin(), right.end());
  }
  const std::vector<std::string> tokens = WordTokens(candidate, language);
  const double cosine = Cosine(Count(tokens), Count(context));
  return {cosine - repetition_penalty_ * RepeatedTrigramFraction(tokens)};
}

CoherenceScore Score(Sentences before, std::string_view candidate, Sentences after,
                     Language language) {
  return LexicalScorer().Score(before, candidate, after, language);
}

CoherenceScore HttpScorer::Score(Sentences before, std::string_view candidate,
                                 Sentences after, Language language) const {
  CheckInputs(before, candidate, after);
  const nlohmann::json body = {
      {"before", std::vector<std::string>(before.begin(), before.end())},
      {"candidate", candidate},
      {"after", std::vector<std::string>(after.begin(), after.end())},
      {"language", LanguageTag(language)}};
  const nlohmann::json response = client_.PostJson("/v1/coherence", body);
  const auto it = response.find("score");
  if (!response.is_object() || it == response.end() || !it->is_number()) {
    throw ProtocolError("coherence response lacks a numeric 'score'",
                        Excerpt(response.dump()));
  }
  const double value = it->get<double>();
  if (!std::isfinite(value)) {
    throw ProtocolError("coherence score is not finite", Excerpt(response.dump()));
  }
  return {value};
}

CoherenceScore ExternalScore(Sentences before, std::string_view candidate,
                             Sentences after, Language language,
                             const generation::BackendConfig& config) {
  return HttpScorer(config).Score(before, candidate, after, language);
}

RankResult Rank(Sentences candidates, Sentences before, Sentences after,
                Language language, const Scorer& scorer) {
  if (candidates.empty()) throw ContractError("cannot rank an empty candidate list");
  RankResult result;
  result.scores.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    result.scores.push_back(scorer.Score(before, candidates[i], after, language));
    if (result.scores[i].value > result.scores[result.best_index].value) {
      result.best_index = i;
    }
  }
  return result;
}

ScorerConfig ScorerConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("scorer config must be a JSON object");
  ScorerConfig c;
  const std::string kind = j.value("kind", std::string("lexical"));
  if (kind == "lexical") {
    c.kind = ScorerConfig::Kind::kLexical;
  } else if (kind == "external") {
    c.kind = ScorerConfig::Kind::kExternal;
    if (!j.contains("backend")) throw ConfigError("external scorer needs a 'backend'");
    c.external = generation::BackendConfigFromJson(j.at("backend"));
  } else {
    throw ConfigError("unknown scorer kind '" + kind + "'; accepted: lexical, external");
  }
  if (j.contains("repetition_penalty")) {
    if (!j["repetition_penalty"].is_number()) {
      throw ConfigError("repetition_penalty must be a number");
    }
    c.repetition_penalty = j["repetition_penalty"].get<double>();
  }
  return c;
}

nlohmann::ordered_json ScorerConfigToJson(const ScorerConfig& c) {
  nlohmann::ordered_json j;
  j["kind"] = c.kind == ScorerConfig::Kind::kExternal ? "external" : "lexical";
  j["repetition_penalty"] = c.repetition_penalty;
  if (c.kind == ScorerConfig::Kind::kExternal) {
    j["backend"] = generation::BackendConfigToJson(c.external);
  }
  return j;
}

std::unique_ptr<Scorer> MakeScorer(const ScorerConfig& config) {
  if (config.kind == ScorerConfig::Kind::kExternal) {
    return std::make_unique<HttpScorer>(config.external);
  }
  return std::make_unique<LexicalScorer>(config.repetition_penalty);
}

}  // namespace revforge::coherence
