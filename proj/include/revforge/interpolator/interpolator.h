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

#ifndef REVFORGE_INTERPOLATOR_INTERPOLATOR_H_
#define REVFORGE_INTERPOLATOR_INTERPOLATOR_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revforge/coherence/coherence.h"
#include "revforge/common/text.h"
#include "revforge/corpus/review.h"
#include "revforge/generation/backend.h"

namespace revforge::interpolator {

// What each gap's prompt and ranker see.
//   kAdjacent: only the sentence directly left and right of the gap.
//   kFullSequence: everything left and everything right of the gap.
enum class ContextMode { kAdjacent, kFullSequence };

std::string_view ContextModeName(ContextMode mode);  // "adjacent" / "full"
ContextMode ParseContextModeName(std::string_view name);  // ConfigError

struct GenerationJob {
  std::string first_sentence;
  std::string last_sentence;
  int target_length = 5;  // 3, 5 or 9
  int fan_out = generation::kDefaultFanOut;
  std::uint64_t seed = 0;
  Language language = Language::kEnglish;
  std::string seed_review_id;
  corpus::Label seed_label = corpus::Label::kReal;
};

// Gap positions to fill per round, relative to the sequence at the start of
// that round. Starting from two sentences every round fills every gap, so
// the length goes 2 -> 3 -> 5 -> 9.
struct InsertionSchedule {
  std::vector<std::vector<int>> rounds;
  int TotalInsertions() const;
};

// Throws ContractError unless target_length is 3, 5 or 9.
InsertionSchedule PlanGaps(int target_length);

// One filled gap, enough to replay the choice from the request log.
struct GapTrace {
  std::string seed_review_id;
  int round = 0;
  int gap = 0;
  std::size_t position = 0;  // index the winner was inserted at
  std::string prompt;
  std::vector<std::string> candidates;
  std::vector<double> scores;  // empty when fan_out == 1 (nothing to rank)
  std::size_t best_index = 0;
  std::string inserted;
};

nlohmann::ordered_json GapTraceToJson(const GapTrace& trace);

struct InterpolationResult {
  corpus::SentenceSequence sequence;
  std::vector<GapTrace> trace;
  std::vector<std::size_t> growth;  // sequence length before round 1 and after each round
};

// Grows [first, last] to job.target_length sentences. Every inserted
// sentence is the ranker's pick among fan_out candidates for its gap;
// gaps within a round are filled left to right on the updated sequence.
// Backend failures are rethrown with the round and gap prepended.
InterpolationResult Interpolate(const GenerationJob& job,
                                const generation::CompletionBackend& backend,
                                const coherence::Scorer& scorer,
                                ContextMode context_mode = ContextMode::kAdjacent,
                                std::vector<generation::CompletionRecord>* requests = nullptr);

struct GenerationConfig {
  int target_length = 5;
  int fan_out = generation::kDefaultFanOut;
  std::uint64_t seed = 0;
  ContextMode context_mode = ContextMode::kAdjacent;
  int max_concurrency = 1;  // jobs in flight at once

  void Validate() const;  // ConfigError
};

struct SkippedSeed {
  std::string review_id;
  std::string reason;
};

struct AugmentResult {
  corpus::LabeledDataset generated;
  std::vector<SkippedSeed> skipped;
  std::vector<GapTrace> trace;
  std::vector<generation::CompletionRecord> requests;
};

std::string GeneratedId(const std::string& seed_id);  // "gen:" + seed id
// Per-review job seed; independent of where the review sits in the dataset.
std::uint64_t JobSeed(std::uint64_t run_seed, const std::string& review_id);

// One generated review per eligible seed in `subset`, in dataset order.
// Seeds that are generated themselves, or have fewer than two sentences,
// are skipped and listed. Generated reviews inherit the seed's label and
// record Generated(seed id, seed label) provenance.
AugmentResult AugmentDataset(const corpus::LabeledDataset& dataset,
                             const GenerationConfig& config, corpus::Subset subset,
                             const generation::CompletionBackend& backend,
                             const coherence::Scorer& scorer);

}  // namespace revforge::interpolator

#endif  // REVFORGE_INTERPOLATOR_INTERPOLATOR_H_
