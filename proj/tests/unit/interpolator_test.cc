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

#include <atomic>
#include <set>

#include <gtest/gtest.h>

#include "revforge/coherence/coherence.h"
#include "revforge/common/error.h"
#include "revforge/corpus/segment.h"
#include "revforge/interpolator/interpolator.h"
#include "testing/fixtures.h"

namespace revforge::interpolator {
namespace {

using corpus::Label;

// Fails on the n-th request (0-based) with the given error kind.
class FailingBackend final : public generation::CompletionBackend {
 public:
  FailingBackend(int fail_at, bool transport) : fail_at_(fail_at), transport_(transport) {}
  std::vector<std::string> Complete(const generation::InfillPrompt& prompt, int k,
                                    std::uint64_t seed,
                                    std::vector<generation::CompletionRecord>* log) const override {
    if (calls_++ == fail_at_) {
      if (transport_) throw TransportError("stub://", 4, "connection refused");
      throw ProtocolError("garbage", "{}");
    }
    return inner_.Complete(prompt, k, seed, log);
  }

 private:
  int fail_at_;
  bool transport_;
  mutable std::atomic<int> calls_{0};
  generation::MockBackend inner_;
};

GenerationJob Job(int length, int k = 10) {
  GenerationJob job;
  job.first_sentence = "The room was small.";
  job.last_sentence = "I would stay again.";
  job.target_length = length;
  job.fan_out = k;
  job.seed = 99;
  job.seed_review_id = "r1";
  return job;
}

TEST(PlanGapsTest, SchedulesPerTarget) {
  EXPECT_EQ(PlanGaps(3).rounds, (std::vector<std::vector<int>>{{0}}));
  EXPECT_EQ(PlanGaps(5).rounds, (std::vector<std::vector<int>>{{0}, {0, 1}}));
  EXPECT_EQ(PlanGaps(9).rounds.size(), 3u);
  EXPECT_EQ(PlanGaps(9).rounds[2], (std::vector<int>{0, 1, 2, 3}));
  for (int n : {3, 5, 9}) EXPECT_EQ(PlanGaps(n).TotalInsertions(), n - 2);
  for (int bad : {0, 2, 4, 7, 10}) EXPECT_THROW(PlanGaps(bad), ContractError);
}

TEST(InterpolateTest, GrowsToTargetKeepingEndpoints) {
  const generation::MockBackend backend;
  const coherence::LexicalScorer scorer;
  for (int n : {3, 5, 9}) {
    const InterpolationResult r = Interpolate(Job(n), backend, scorer);
    ASSERT_EQ(r.sequence.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(r.sequence.sentences.front(), "The room was small.");
    EXPECT_EQ(r.sequence.sentences.back(), "I would stay again.");
    EXPECT_EQ(r.trace.size(), static_cast<std::size_t>(n - 2));
  }
  EXPECT_EQ(Interpolate(Job(5), backend, scorer).growth, (std::vector<std::size_t>{2, 3, 5}));
  EXPECT_EQ(Interpolate(Job(9), backend, scorer).growth,
            (std::vector<std::size_t>{2, 3, 5, 9}));
}

TEST(InterpolateTest, EveryInsertionIsTheRankersPick) {
  const generation::MockBackend backend;
  const coherence::LexicalScorer scorer;
  for (ContextMode mode : {ContextMode::kAdjacent, ContextMode::kFullSequence}) {
    const InterpolationResult r = Interpolate(Job(9), backend, scorer, mode);
    for (const GapTrace& t : r.trace) {
      ASSERT_EQ(t.candidates.size(), 10u);
      ASSERT_EQ(t.scores.size(), 10u);
      const double best = t.scores[t.best_index];
      for (std::size_t i = 0; i < t.scores.size(); ++i) {
        EXPECT_LE(t.scores[i], best);
        if (i < t.best_index) EXPECT_LT(t.scores[i], best);
      }
      EXPECT_EQ(t.inserted, t.candidates[t.best_index]);
      // Each trace entry explains the sentence sitting at its position once the
      // round finished; the final sequence must contain it.
      EXPECT_NE(std::find(r.sequence.sentences.begin(), r.sequence.sentences.end(), t.inserted),
                r.sequence.sentences.end());
    }
  }
}

TEST(InterpolateTest, SingleCandidateSkipsRanking) {
  const InterpolationResult r =
      Interpolate(Job(5, 1), generation::MockBackend(), coherence::LexicalScorer());
  ASSERT_EQ(r.sequence.size(), 5u);
  for (const GapTrace& t : r.trace) {
    EXPECT_TRUE(t.scores.empty());
    EXPECT_EQ(t.best_index, 0u);
  }
}

TEST(InterpolateTest, DeterministicAndLogsRequests) {
  const generation::MockBackend backend;
  const coherence::LexicalScorer scorer;
  std::vector<generation::CompletionRecord> log;
  const auto a = Interpolate(Job(5), backend, scorer, ContextMode::kAdjacent, &log);
  const auto b = Interpolate(Job(5), backend, scorer);
  EXPECT_EQ(a.sequence, b.sequence);
  EXPECT_EQ(log.size(), 3u);
  GenerationJob other = Job(5);
  other.seed = 100;
  EXPECT_NE(Interpolate(other, backend, scorer).sequence, a.sequence);
}

TEST(InterpolateTest, AdjacentPromptsOnlySeeNeighbours) {
  const auto r = Interpolate(Job(5), generation::MockBackend(), coherence::LexicalScorer(),
                             ContextMode::kAdjacent);
  // Round 2, gap 0 sits between the first sentence and the round-1 insert.
  const GapTrace& t = r.trace[1];
  EXPECT_EQ(t.round, 2);
  EXPECT_NE(t.prompt.find("The room was small."), std::string::npos);
  EXPECT_EQ(t.prompt.find("I would stay again."), std::string::npos);
  const auto full = Interpolate(Job(5), generation::MockBackend(), coherence::LexicalScorer(),
                                ContextMode::kFullSequence);
  EXPECT_NE(full.trace[1].prompt.find("I would stay again."), std::string::npos);
}

TEST(InterpolateTest, BackendErrorsNameRoundAndGap) {
  const coherence::LexicalScorer scorer;
  try {
    Interpolate(Job(5), FailingBackend(2, true), scorer);
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_NE(std::string(e.what()).find("round 2 gap 1"), std::string::npos) << e.what();
    EXPECT_EQ(e.attempts(), 4);
  }
  try {
    Interpolate(Job(5), FailingBackend(0, false), scorer);
    FAIL();
  } catch (const ProtocolError& e) {
    EXPECT_NE(std::string(e.what()).find("round 1 gap 0"), std::string::npos) << e.what();
  }
}

TEST(InterpolateTest, BadJobs) {
  GenerationJob job = Job(4);
  EXPECT_THROW(Interpolate(job, generation::MockBackend(), coherence::LexicalScorer()),
               ContractError);
  job = Job(5, 0);
  EXPECT_THROW(Interpolate(job, generation::MockBackend(), coherence::LexicalScorer()),
               ContractError);
  job = Job(5);
  job.first_sentence = " ";
  EXPECT_THROW(Interpolate(job, generation::MockBackend(), coherence::LexicalScorer()),
               ContractError);
}

TEST(GenerationConfigTest, Validation) {
  GenerationConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.target_length = 7;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = GenerationConfig{};
  c.max_concurrency = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_EQ(ParseContextModeName("full"), ContextMode::kFullSequence);
  EXPECT_EQ(ContextModeName(ContextMode::kAdjacent), "adjacent");
  EXPECT_THROW(ParseContextModeName("wide"), ConfigError);
}

corpus::LabeledDataset TwentyReviews() {
  revforge::testing::ToyCorpusOptions o;
  o.n_real = 10;
  o.n_fake = 10;
  o.min_sentences = 2;
  o.max_sentences = 5;
  return revforge::testing::ToyCorpus(o);
}

TEST(AugmentTest, OneGeneratedReviewPerSeed) {
  const corpus::LabeledDataset ds = TwentyReviews();
  GenerationConfig cfg;
  cfg.seed = 5;
  const AugmentResult r = AugmentDataset(ds, cfg, corpus::Subset::kAll,
                                         generation::MockBackend(), coherence::LexicalScorer());
  ASSERT_EQ(r.generated.size(), 20u);
  EXPECT_TRUE(r.skipped.empty());
  EXPECT_EQ(r.generated.name, "toy_generated");
  EXPECT_EQ(r.trace.size(), 60u);
  EXPECT_EQ(r.requests.size(), 60u);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const corpus::Review& seed = ds.reviews[i];
    const corpus::Review& gen = r.generated.reviews[i];
    EXPECT_EQ(gen.id, "gen:" + seed.id);
    EXPECT_EQ(gen.label, seed.label);
    EXPECT_TRUE(gen.provenance.generated);
    EXPECT_EQ(gen.provenance.seed_id, seed.id);
    EXPECT_EQ(gen.provenance.seed_label, seed.label);
    const auto seed_sents = corpus::SentenceSegment(seed.text, Language::kEnglish).sentences;
    const auto gen_sents = corpus::SentenceSegment(gen.text, Language::kEnglish).sentences;
    EXPECT_EQ(gen_sents.size(), 5u);
    EXPECT_EQ(gen_sents.front(), seed_sents.front());
    EXPECT_EQ(gen_sents.back(), seed_sents.back());
  }
}

TEST(AugmentTest, SubsetSelectsSeeds) {
  const corpus::LabeledDataset ds = TwentyReviews();
  const AugmentResult r = AugmentDataset(ds, GenerationConfig{}, corpus::Subset::kFake,
                                         generation::MockBackend(), coherence::LexicalScorer());
  ASSERT_EQ(r.generated.size(), 10u);
  for (const auto& g : r.generated.reviews) EXPECT_EQ(g.label, Label::kFake);
}

TEST(AugmentTest, LabelsNeverReachTheGenerator) {
  corpus::LabeledDataset ds = TwentyReviews();
  const auto a = AugmentDataset(ds, GenerationConfig{}, corpus::Subset::kAll,
                                generation::MockBackend(), coherence::LexicalScorer());
  for (auto& r : ds.reviews) r.label = r.label == Label::kFake ? Label::kReal : Label::kFake;
  const auto b = AugmentDataset(ds, GenerationConfig{}, corpus::Subset::kAll,
                                generation::MockBackend(), coherence::LexicalScorer());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(a.generated.reviews[i].text, b.generated.reviews[i].text);
  }
}

TEST(AugmentTest, ShortAndGeneratedSeedsAreSkipped) {
  corpus::LabeledDataset ds = TwentyReviews();
  ds.reviews[3].text = "Only one sentence here.";
  ds.reviews[7].provenance = corpus::Provenance::GeneratedFrom("toy-1", Label::kReal);
  const AugmentResult r = AugmentDataset(ds, GenerationConfig{}, corpus::Subset::kAll,
                                         generation::MockBackend(), coherence::LexicalScorer());
  EXPECT_EQ(r.generated.size(), 18u);
  ASSERT_EQ(r.skipped.size(), 2u);
  EXPECT_EQ(r.skipped[0].review_id, ds.reviews[3].id);
  EXPECT_EQ(r.skipped[0].reason, "fewer than 2 sentences");
  EXPECT_EQ(r.skipped[1].review_id, ds.reviews[7].id);
}

TEST(AugmentTest, ConcurrencyDoesNotChangeOutput) {
  const corpus::LabeledDataset ds = TwentyReviews();
  GenerationConfig serial;
  GenerationConfig parallel;
  parallel.max_concurrency = 4;
  const auto a = AugmentDataset(ds, serial, corpus::Subset::kAll, generation::MockBackend(),
                                coherence::LexicalScorer());
  const auto b = AugmentDataset(ds, parallel, corpus::Subset::kAll, generation::MockBackend(),
                                coherence::LexicalScorer());
  EXPECT_EQ(a.generated.reviews, b.generated.reviews);
  // A review's output depends on its id, not its position.
  corpus::LabeledDataset reversed = ds;
  std::reverse(reversed.reviews.begin(), reversed.reviews.end());
  const auto c = AugmentDataset(reversed, serial, corpus::Subset::kAll,
                                generation::MockBackend(), coherence::LexicalScorer());
  EXPECT_EQ(c.generated.reviews.front(), a.generated.reviews.back());
}

TEST(AugmentTest, ParallelFailureReportsEarliestSeed) {
  const corpus::LabeledDataset ds = TwentyReviews();
  GenerationConfig cfg;
  cfg.max_concurrency = 3;
  EXPECT_THROW(AugmentDataset(ds, cfg, corpus::Subset::kAll, FailingBackend(7, true),
                              coherence::LexicalScorer()),
               TransportError);
}

TEST(AugmentTest, ChineseSeeds) {
  revforge::testing::ToyCorpusOptions o;
  o.language = Language::kChinese;
  o.n_real = o.n_fake = 3;
  const corpus::LabeledDataset ds = revforge::testing::ToyCorpus(o);
  GenerationConfig cfg;
  cfg.target_length = 3;
  const auto r = AugmentDataset(ds, cfg, corpus::Subset::kAll, generation::MockBackend(),
                                coherence::LexicalScorer());
  ASSERT_EQ(r.generated.size(), 6u);
  for (const auto& g : r.generated.reviews) {
    EXPECT_EQ(g.language, "zh");
    EXPECT_EQ(corpus::SentenceSegment(g.text, Language::kChinese).size(), 3u);
  }
}

}  // namespace
}  // namespace revforge::interpolator
