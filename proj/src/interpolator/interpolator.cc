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

#include "revforge/interpolator/interpolator.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "revforge/common/error.h"
#include "revforge/common/hash.h"
#include "revforge/common/logging.h"
#include "revforge/corpus/segment.h"

namespace revforge::interpolator {
namespace {

template <typename Fn>
auto WithGapContext(int round, int gap, Fn&& fn) -> decltype(fn()) {
  const std::string where =
      "round " + std::to_string(round) + " gap " + std::to_string(gap);
  try {
    return fn();
  } catch (const TransportError& e) {
    throw e.WithPrefix(where);
  } catch (const ProtocolError& e) {
    throw e.WithPrefix(where);
  }
}

struct JobOutput {
  std::optional<corpus::Review> review;
  std::optional<SkippedSeed> skipped;
  std::vector<GapTrace> trace;
  std::vector<generation::CompletionRecord> requests;
};

}  // namespace

std::string_view ContextModeName(ContextMode mode) {
  return mode == ContextMode::kFullSequence ? "full" : "adjacent";
}

ContextMode ParseContextModeName(std::string_view name) {
  if (name == "adjacent") return ContextMode::kAdjacent;
  if (name == "full") return ContextMode::kFullSequence;
  throw ConfigError("unknown context mode '" + std::string(name) +
                    "'; accepted: adjacent, full");
}

void GenerationConfig::Validate() const {
  if (target_length != 3 && target_length != 5 && target_length != 9) {
    throw ConfigError("target_length must be 3, 5 or 9");
  }
  if (fan_out < 1) throw ConfigError("fan_out must be >= 1");
  if (max_concurrency < 1) throw ConfigError("max_concurrency must be >= 1");
}

int InsertionSchedule::TotalInsertions() const {
  int total = 0;
  for (const auto& round : rounds) total += static_cast<int>(round.size());
  return total;
}

InsertionSchedule PlanGaps(int target_length) {
  if (target_length != 3 && target_length != 5 && target_length != 9) {
    throw ContractError("target length must be 3, 5 or 9, got " +
                        std::to_string(target_length));
  }
  InsertionSchedule schedule;
  int length = 2;
  while (length < target_length) {
    std::vector<int> gaps(static_cast<std::size_t>(length - 1));
    for (int g = 0; g < length - 1; ++g) gaps[static_cast<std::size_t>(g)] = g;
    schedule.rounds.push_back(std::move(gaps));
    length = 2 * length - 1;
  }
  return schedule;
}

nlohmann::ordered_json GapTraceToJson(const GapTrace& t) {
  return {{"seed_review_id", t.seed_review_id},
          {"round", t.round},
          {"gap", t.gap},
          {"position", t.position},
          {"prompt", t.prompt},
          {"candidates", t.candidates},
          {"scores", t.scores},
          {"best_index", t.best_index},
          {"inserted", t.inserted}};
}

InterpolationResult Interpolate(const GenerationJob& job,
                                const generation::CompletionBackend& backend,
                                const coherence::Scorer& scorer, ContextMode context_mode,
                                std::vector<generation::CompletionRecord>* requests) {
  const InsertionSchedule schedule = PlanGaps(job.target_length);
  if (job.fan_out < 1) throw ContractError("fan_out must be >= 1");
  if (Trim(job.first_sentence).empty() || Trim(job.last_sentence).empty()) {
    throw ContractError("interpolation needs non-empty first and last sentences");
  }

  InterpolationResult result;
  std::vector<std::string>& seq = result.sequence.sentences;
  result.sequence.language = std::string(LanguageTag(job.language));
  seq = {job.first_sentence, job.last_sentence};
  result.growth.push_back(seq.size());

  std::uint64_t gap_counter = 0;
  for (std::size_t r = 0; r < schedule.rounds.size(); ++r) {
    const int round = static_cast<int>(r) + 1;
    std::size_t inserted_this_round = 0;
    for (int gap : schedule.rounds[r]) {
      const std::size_t left = static_cast<std::size_t>(gap) + inserted_this_round;
      const std::size_t right = left + 1;
      std::vector<std::string> before;
      std::vector<std::string> after;
      if (context_mode == ContextMode::kAdjacent) {
        before = {seq[left]};
        after = {seq[right]};
      } else {
        before.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(right));
        after.assign(seq.begin() + static_cast<std::ptrdiff_t>(right), seq.end());
      }
      const generation::InfillPrompt prompt = generation::BuildInfillPrompt(
          corpus::JoinSentences(before, job.language),
          corpus::JoinSentences(after, job.language), job.language);
      const std::uint64_t gap_seed = HashCombine(job.seed, gap_counter++);

      GapTrace trace;
      trace.seed_review_id = job.seed_review_id;
      trace.round = round;
      trace.gap = gap;
      trace.position = right;
      trace.prompt = prompt.rendered;
      trace.candidates = WithGapContext(round, gap, [&] {
        return backend.Complete(prompt, job.fan_out, gap_seed, requests);
      });
      if (trace.candidates.size() > 1) {
        const coherence::RankResult ranked = WithGapContext(round, gap, [&] {
          return coherence::Rank(trace.candidates, before, after, job.language, scorer);
        });
        trace.best_index = ranked.best_index;
        for (const auto& s : ranked.scores) trace.scores.push_back(s.value);
      }
      trace.inserted = trace.candidates[trace.best_index];
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(right), trace.inserted);
      result.trace.push_back(std::move(trace));
      ++inserted_this_round;
    }
    result.growth.push_back(seq.size());
  }
  return result;
}

std::string GeneratedId(const std::string& seed_id) { return "gen:" + seed_id; }

std::uint64_t JobSeed(std::uint64_t run_seed, const std::string& review_id) {
  return HashCombine(run_seed, Fnv1a64(review_id));
}

AugmentResult AugmentDataset(const corpus::LabeledDataset& dataset,
                             const GenerationConfig& config, corpus::Subset subset,
                             const generation::CompletionBackend& backend,
                             const coherence::Scorer& scorer) {
  PlanGaps(config.target_length);
  if (config.fan_out < 1) throw ContractError("fan_out must be >= 1");

  std::vector<const corpus::Review*> selected;
  for (const corpus::Review& r : dataset.reviews) {
    if (corpus::SubsetAdmits(subset, r.label)) selected.push_back(&r);
  }

  std::vector<JobOutput> outputs(selected.size());
  auto run_one = [&](std::size_t i) {
    const corpus::Review& seed = *selected[i];
    JobOutput& out = outputs[i];
    if (seed.provenance.generated) {
      out.skipped = SkippedSeed{seed.id, "seed is itself a generated review"};
      return;
    }
    if (Trim(seed.text).empty()) {
      out.skipped = SkippedSeed{seed.id, "seed text is blank"};
      return;
    }
    const Language language =
        ParseLanguage(seed.language.empty() ? dataset.language : seed.language);
    const corpus::SentenceSequence sentences = corpus::SentenceSegment(seed.text, language);
    if (sentences.size() < 2) {
      out.skipped = SkippedSeed{seed.id, "fewer than 2 sentences"};
      return;
    }
    GenerationJob job;
    job.first_sentence = sentences.sentences.front();
    job.last_sentence = sentences.sentences.back();
    job.target_length = config.target_length;
    job.fan_out = config.fan_out;
    job.seed = JobSeed(config.seed, seed.id);
    job.language = language;
    job.seed_review_id = seed.id;
    job.seed_label = seed.label;
    InterpolationResult grown =
        Interpolate(job, backend, scorer, config.context_mode, &out.requests);

    corpus::Review generated;
    generated.id = GeneratedId(seed.id);
    generated.text = corpus::JoinSentences(grown.sequence.sentences, language);
    generated.label = seed.label;
    generated.provenance = corpus::Provenance::GeneratedFrom(seed.id, seed.label);
    generated.dataset = seed.dataset;
    generated.language = std::string(LanguageTag(language));
    out.review = std::move(generated);
    out.trace = std::move(grown.trace);
  };

  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(1, config.max_concurrency)), selected.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < selected.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = selected.size();
    std::exception_ptr error;
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < selected.size(); i = next++) {
            try {
              run_one(i);
            } catch (...) {
              std::lock_guard lock(error_mutex);
              // Report the failure the sequential run would have hit first.
              if (i < error_index) {
                error_index = i;
                error = std::current_exception();
              }
            }
          }
        });
      }
    }
    if (error) std::rethrow_exception(error);
  }

  AugmentResult result;
  result.generated.name = dataset.name + "_generated";
  result.generated.language = dataset.language;
  for (JobOutput& out : outputs) {
    if (out.skipped) {
      Log().info("skipping seed {}: {}", out.skipped->review_id, out.skipped->reason);
      result.skipped.push_back(std::move(*out.skipped));
      continue;
    }
    if (!out.review) continue;
    result.generated.reviews.push_back(std::move(*out.review));
    std::move(out.trace.begin(), out.trace.end(), std::back_inserter(result.trace));
    std::move(out.requests.begin(), out.requests.end(),
              std::back_inserter(result.requests));
  }
  return result;
}

}  // namespace revforge::interpolator
