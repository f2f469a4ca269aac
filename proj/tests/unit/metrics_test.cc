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

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "revforge/common/error.h"
#include "revforge/metrics/bleu.h"
#include "revforge/metrics/classification.h"
#include "testing/fixtures.h"
#include "testing/oracles.h"

namespace revforge::metrics {
namespace {

using corpus::Label;

nlohmann::json Samples() {
  std::ifstream in(std::string(REVFORGE_GOLDEN_DIR) + "/bleu_samples.json");
  return nlohmann::json::parse(in);
}

// ---- BLEU ------------------------------------------------------------------

TEST(BleuTokensTest, EnglishSplitsPunctuation) {
  EXPECT_EQ(BleuTokens("Don't stop, OK?", Language::kEnglish),
            (std::vector<std::string>{"don", "'", "t", "stop", ",", "ok", "?"}));
  EXPECT_EQ(BleuTokens("a &#34;b&#34;", Language::kEnglish),
            (std::vector<std::string>{"a", "&", "#", "34", ";", "b", "&", "#", "34", ";"}));
  EXPECT_EQ(BleuTokens("Don't stop", Language::kEnglish, BleuTokenization::kWhitespace),
            (std::vector<std::string>{"Don't", "stop"}));
}

TEST(BleuTokensTest, ChineseKeepsPunctuationCharacters) {
  EXPECT_EQ(BleuTokens("好吃， 便宜。", Language::kChinese),
            (std::vector<std::string>{"好", "吃", "，", "便", "宜", "。"}));
}

TEST(BleuTest, IdentityIsOne) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const std::string a = revforge::testing::RandomTextPair(rng).reference;
    const BleuResult r = Bleu(a, a, Language::kEnglish);
    EXPECT_DOUBLE_EQ(r.score, 1.0) << a;
    EXPECT_DOUBLE_EQ(r.brevity_penalty, 1.0);
  }
  const BleuResult r = Bleu("The food was great.", "The food was great.", Language::kEnglish);
  for (const auto& p : r.precisions) EXPECT_DOUBLE_EQ(p.value(), 1.0);
  EXPECT_DOUBLE_EQ(Bleu("好吃又便宜。", "好吃又便宜。", Language::kChinese).score, 1.0);
  // Three tokens have no 4-gram; the empty precision takes the epsilon floor.
  const BleuResult tiny = Bleu("好吃。", "好吃。", Language::kChinese);
  EXPECT_EQ(tiny.precisions[3].total, 0u);
  EXPECT_NEAR(tiny.score, std::pow(tiny.epsilon, 0.25), 1e-90);
}

TEST(BleuTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(20260101);
  for (int i = 0; i < 25; ++i) {
    const auto pair = revforge::testing::RandomTextPair(rng);
    const BleuResult got = Bleu(pair.candidate, pair.reference, Language::kEnglish);
    const auto want = revforge::testing::BruteForceBleu(
        revforge::testing::RegexWordPunctTokens(pair.candidate),
        revforge::testing::RegexWordPunctTokens(pair.reference));
    EXPECT_NEAR(got.score, want.score, 1e-12) << pair.candidate << " | " << pair.reference;
    EXPECT_NEAR(got.brevity_penalty, want.brevity_penalty, 1e-12);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(got.precisions[n].value(), want.precision[n], 1e-12);
  }
}

TEST(BleuTest, CandidateAndReferenceRolesDiffer) {
  const std::string a = "the cat sat on the mat";
  const std::string b = "the cat sat on the mat today with me";
  const double ab = Bleu(a, b, Language::kEnglish).score;
  const double ba = Bleu(b, a, Language::kEnglish).score;
  // a is a prefix of b: every n-gram of a matches, but a is short.
  EXPECT_NEAR(ab, std::exp(1.0 - 9.0 / 6.0), 1e-12);
  EXPECT_NEAR(ba, std::pow((6.0 / 9) * (5.0 / 8) * (4.0 / 7) * (3.0 / 6), 0.25), 1e-12);
  EXPECT_NE(ab, ba);
}

TEST(BleuTest, ClippingCountsReferenceOccurrences) {
  const BleuResult r = Bleu("the the the the", "the cat", Language::kEnglish);
  EXPECT_EQ(r.precisions[0].matched, 1u);
  EXPECT_EQ(r.precisions[0].total, 4u);
}

TEST(BleuTest, ZeroPrecisionsUseSmallestNormalDouble) {
  const BleuResult r = Bleu("alpha beta gamma delta", "delta gamma beta alpha", Language::kEnglish);
  EXPECT_EQ(r.epsilon, DBL_MIN);
  EXPECT_DOUBLE_EQ(r.precisions[0].value(), 1.0);
  EXPECT_EQ(r.precisions[1].matched, 0u);
  EXPECT_GT(r.score, 0.0);
  EXPECT_LE(r.score, 1e-76);
  // Three zero precisions: 1 * eps^(3/4).
  EXPECT_NEAR(r.score / std::pow(DBL_MIN, 0.75), 1.0, 1e-9);
}

TEST(BleuTest, ShortCandidateHasNoHigherOrderGrams) {
  const BleuResult r = Bleu("good", "good food", Language::kEnglish);
  EXPECT_EQ(r.precisions[3].total, 0u);
  EXPECT_GT(r.score, 0.0);
}

TEST(BleuTest, SampleTextsUnderBothTokenizations) {
  const nlohmann::json s = Samples();
  const auto& en = s["en_interpolated"];
  const BleuResult declared =
      Bleu(en["candidate"].get<std::string>(), en["reference"].get<std::string>(), Language::kEnglish);
  EXPECT_NEAR(declared.score, 0.30378154, 1e-6);
  EXPECT_NEAR(declared.score, en["target"].get<double>(), 0.05);
  const BleuResult ws = Bleu(en["candidate"].get<std::string>(), en["reference"].get<std::string>(),
                             Language::kEnglish, BleuTokenization::kWhitespace);
  EXPECT_NEAR(ws.score, en["target"].get<double>(), 5e-5);

  const auto& zh = s["zh_interpolated"];
  const BleuResult chars = Bleu(zh["candidate"].get<std::string>(),
                                zh["reference"].get<std::string>(), Language::kChinese);
  EXPECT_NEAR(chars.score, 0.25200062, 1e-6);
  EXPECT_NEAR(chars.score, zh["target"].get<double>(), 0.005);

  const auto& far = s["en_unrelated"];
  const BleuResult unrelated = Bleu(far["candidate"].get<std::string>(),
                                    far["reference"].get<std::string>(), Language::kEnglish);
  EXPECT_EQ(unrelated.precisions[2].matched, 0u);
  EXPECT_EQ(unrelated.precisions[3].matched, 0u);
  EXPECT_GT(unrelated.score, 1e-156);
  EXPECT_LT(unrelated.score, 1e-154);
}

TEST(BleuTest, EmptyInputIsContractError) {
  EXPECT_THROW(Bleu("", "x", Language::kEnglish), ContractError);
  EXPECT_THROW(Bleu("x", "", Language::kEnglish), ContractError);
  EXPECT_THROW(Bleu("   ", "x", Language::kEnglish), ContractError);
}

TEST(BleuTest, JsonCarriesPolicy) {
  const auto j = BleuResultToJson(Bleu("a b c", "a b d", Language::kEnglish));
  EXPECT_EQ(j["precisions"].size(), 4u);
  EXPECT_EQ(j["epsilon"].get<double>(), DBL_MIN);
}

// ---- classification --------------------------------------------------------

std::vector<Label> Labels(const std::string& pattern) {
  std::vector<Label> out;
  for (char c : pattern) out.push_back(c == 'F' ? Label::kFake : Label::kReal);
  return out;
}

TEST(ClassificationTest, AllCorrect) {
  const auto gold = Labels("RRFFRFRFRF");
  const EvalReport r = ClassificationReport(gold, gold);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.real.f1, 1.0);
  EXPECT_DOUBLE_EQ(r.fake.f1, 1.0);
}

TEST(ClassificationTest, ConstantFakeOnSixRealFourFake) {
  const EvalReport r = ClassificationReport(Labels("FFFFFFFFFF"), Labels("RRRRRRFFFF"));
  EXPECT_DOUBLE_EQ(r.accuracy, 0.4);
  EXPECT_DOUBLE_EQ(r.real.f1, 0.0);
  EXPECT_DOUBLE_EQ(r.real.precision, 0.0);
  EXPECT_DOUBLE_EQ(r.fake.precision, 0.4);
  EXPECT_DOUBLE_EQ(r.fake.recall, 1.0);
  EXPECT_NEAR(r.fake.f1, 4.0 / 7.0, 1e-15);
  EXPECT_EQ(r.confusion[0][1], 6u);
  EXPECT_EQ(r.confusion[1][1], 4u);
  EXPECT_EQ(r.confusion[0][0] + r.confusion[1][0], 0u);
}

TEST(ClassificationTest, PropertiesOnRandomLabelings) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<Label> pred(n);
    std::vector<Label> gold(n);
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] = rng() % 2 ? Label::kFake : Label::kReal;
      gold[i] = rng() % 2 ? Label::kFake : Label::kReal;
    }
    const EvalReport r = ClassificationReport(pred, gold);
    EXPECT_EQ(r.Total(), n);
    EXPECT_EQ(r.accuracy, static_cast<double>(r.confusion[0][0] + r.confusion[1][1]) / n);
    // Recompute fake-class metrics from the matrix.
    const double tp = r.confusion[1][1];
    const double fp = r.confusion[0][1];
    const double fn = r.confusion[1][0];
    EXPECT_DOUBLE_EQ(r.fake.precision, tp + fp == 0 ? 0.0 : tp / (tp + fp));
    EXPECT_DOUBLE_EQ(r.fake.recall, tp + fn == 0 ? 0.0 : tp / (tp + fn));
    for (double v : {r.accuracy, r.real.f1, r.fake.f1, r.real.precision, r.real.recall}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    // Joint permutation changes nothing.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Label> p2;
    std::vector<Label> g2;
    for (std::size_t i : order) {
      p2.push_back(pred[i]);
      g2.push_back(gold[i]);
    }
    const EvalReport s = ClassificationReport(p2, g2);
    EXPECT_EQ(EvalReportToJson(s).dump(), EvalReportToJson(r).dump());
  }
}

TEST(ClassificationTest, ContractErrors) {
  EXPECT_THROW(ClassificationReport(Labels("RF"), Labels("R")), ContractError);
  EXPECT_THROW(ClassificationReport({}, {}), ContractError);
}

TEST(ClassificationTest, JsonRoundTrip) {
  EvalReport r = ClassificationReport(Labels("RFFR"), Labels("RFRR"), "yelp_test/B", "svm");
  r.n_train = 12;
  const EvalReport back = EvalReportFromJson(nlohmann::json(EvalReportToJson(r)));
  EXPECT_EQ(back.config_id, "yelp_test/B");
  EXPECT_EQ(back.confusion, r.confusion);
  EXPECT_EQ(back.n_train, 12u);
  EXPECT_DOUBLE_EQ(back.fake.f1, r.fake.f1);
  EXPECT_THROW(EvalReportFromJson({{"config_id", 1}}), DataError);
}

}  // namespace
}  // namespace revforge::metrics
