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
#include <cstdlib>
#include <mutex>
#include <set>

#include <gtest/gtest.h>
#include <json.hpp>

#include "revforge/common/error.h"
#include "revforge/corpus/segment.h"
#include "revforge/generation/backend.h"
#include "revforge/generation/backend_config.h"
#include "revforge/generation/http_transport.h"
#include "revforge/generation/prompt.h"
#include "testing/fixtures.h"

namespace revforge::generation {
namespace {

using nlohmann::json;
using revforge::testing::StubServer;

BackendConfig StubConfig(const StubServer& stub, int retries = 2) {
  BackendConfig c;
  c.endpoint = stub.endpoint();
  c.model_name = "stub-model";
  c.max_retries = retries;
  c.retry_backoff = 0.0;
  c.timeout = 5.0;
  return c;
}

json Choices(const std::vector<std::string>& texts) {
  json j = {{"choices", json::array()}};
  for (std::size_t i = 0; i < texts.size(); ++i) {
    j["choices"].push_back({{"text", texts[i]}, {"index", i}});
  }
  return j;
}

// ---- prompt ----------------------------------------------------------------

TEST(PromptTest, EnglishTemplate) {
  const InfillPrompt p = BuildInfillPrompt("Great food.", "Will return.", "en");
  EXPECT_EQ(p.rendered,
            "Review so far: Great food. [MISSING SENTENCE] Will return.\n"
            "Write the missing sentence:");
  EXPECT_EQ(p.left_context, "Great food.");
  EXPECT_EQ(p.language, Language::kEnglish);
}

TEST(PromptTest, ChineseTemplate) {
  const InfillPrompt p = BuildInfillPrompt("好吃。", "再来。", Language::kChinese);
  EXPECT_EQ(p.rendered, "已有评论：好吃。[缺失句子]再来。\n请写出缺失的句子：");
}

TEST(PromptTest, RejectsBadInput) {
  EXPECT_THROW(BuildInfillPrompt("", "x", "en"), ContractError);
  EXPECT_THROW(BuildInfillPrompt("x", "  ", "en"), ContractError);
  EXPECT_THROW(BuildInfillPrompt("a [MISSING SENTENCE]", "b", "en"), ContractError);
  EXPECT_THROW(BuildInfillPrompt("a", "b", "fr"), ConfigError);
}

// ---- config ----------------------------------------------------------------

TEST(BackendConfigTest, DefaultsAndValidation) {
  BackendConfig c;
  EXPECT_TRUE(c.IsMock());
  EXPECT_NO_THROW(c.Validate());
  EXPECT_EQ(c.max_retries, 3);
  EXPECT_DOUBLE_EQ(c.timeout, 30.0);
  c.max_retries = 6;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = BackendConfig{};
  c.endpoint = "ftp://x";
  EXPECT_THROW(c.Validate(), ConfigError);
  c = BackendConfig{};
  c.temperature = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(BackendConfigTest, JsonRoundTripAndUnknownKeys) {
  const json j = {{"endpoint", "http://h:1/base"}, {"model_name", "m"},
                  {"api_key_env", "K"},            {"max_retries", 1},
                  {"temperature", 0.7},            {"max_tokens", 30}};
  const BackendConfig c = BackendConfigFromJson(j);
  EXPECT_EQ(c.endpoint, "http://h:1/base");
  EXPECT_EQ(c.max_tokens, 30);
  const BackendConfig back = BackendConfigFromJson(json(BackendConfigToJson(c)));
  EXPECT_EQ(back.model_name, "m");
  EXPECT_EQ(back.api_key_env, "K");
  EXPECT_DOUBLE_EQ(back.temperature, 0.7);
  EXPECT_THROW(BackendConfigFromJson({{"endpiont", "x"}}), ConfigError);
  EXPECT_THROW(BackendConfigFromJson({{"max_retries", "two"}}), ConfigError);
}

// ---- mock ------------------------------------------------------------------

TEST(MockBackendTest, ReturnsExactlyKSingleSentences) {
  const InfillPrompt p = BuildInfillPrompt("Nice.", "Bye.", "en");
  for (int k : {1, 3, 10, 25}) {
    const auto out = MockComplete(p, k, 7);
    ASSERT_EQ(out.size(), static_cast<std::size_t>(k));
    for (const auto& s : out) {
      EXPECT_EQ(corpus::SentenceSegment(s, Language::kEnglish).size(), 1u) << s;
    }
  }
  EXPECT_THROW(MockComplete(p, 0, 7), ContractError);
}

TEST(MockBackendTest, DeterministicInPromptAndSeed) {
  const InfillPrompt p = BuildInfillPrompt("Nice.", "Bye.", "en");
  const InfillPrompt q = BuildInfillPrompt("Nice.", "Later.", "en");
  EXPECT_EQ(MockComplete(p, 10, 1), MockComplete(p, 10, 1));
  EXPECT_NE(MockComplete(p, 10, 1), MockComplete(p, 10, 2));
  EXPECT_NE(MockComplete(p, 10, 1), MockComplete(q, 10, 1));
  // Prefix stability: asking for more never changes the first candidates.
  const auto three = MockComplete(p, 3, 1);
  const auto ten = MockComplete(p, 10, 1);
  EXPECT_TRUE(std::equal(three.begin(), three.end(), ten.begin()));
}

TEST(MockBackendTest, OutputsComeFromTheBank) {
  for (Language lang : {Language::kEnglish, Language::kChinese}) {
    const auto bank = MockBackend::EnumerateBank(lang);
    const std::set<std::string> allowed(bank.begin(), bank.end());
    EXPECT_EQ(allowed.size(), bank.size());
    const InfillPrompt p = lang == Language::kChinese
                               ? BuildInfillPrompt("好。", "走了。", lang)
                               : BuildInfillPrompt("Good.", "Gone.", lang);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      for (const auto& s : MockComplete(p, 10, seed)) EXPECT_TRUE(allowed.count(s)) << s;
    }
  }
}

TEST(MockBackendTest, LogsOneRecord) {
  std::vector<CompletionRecord> log;
  const InfillPrompt p = BuildInfillPrompt("A.", "B.", "en");
  MockBackend().Complete(p, 4, 9, &log);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0].requested, 4);
  EXPECT_EQ(log[0].accepted.size(), 4u);
  EXPECT_EQ(CompletionRecordToJson(log[0])["seed"], 9);
}

TEST(MockBackendTest, FactoryPicksImplementation) {
  BackendConfig c;
  EXPECT_NE(dynamic_cast<MockBackend*>(MakeCompletionBackend(c).get()), nullptr);
  c.endpoint = "http://127.0.0.1:1";
  EXPECT_NE(dynamic_cast<HttpCompletionBackend*>(MakeCompletionBackend(c).get()), nullptr);
}

// ---- HTTP ------------------------------------------------------------------

TEST(HttpBackendTest, SendsRequestAndTruncatesToFirstSentence) {
  StubServer stub;
  json seen;
  std::mutex mu;
  stub.server().Post("/v1/completions", [&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(mu);
    seen = json::parse(req.body);
    res.set_content(Choices({"One here. And more.", "Two!", "  Three? x"}).dump(),
                    "application/json");
  });
  stub.Start();
  BackendConfig cfg = StubConfig(stub);
  std::vector<CompletionRecord> log;
  const InfillPrompt p = BuildInfillPrompt("L.", "R.", "en");
  const auto out = Complete(p, 3, cfg, 77, &log);
  EXPECT_EQ(out, (std::vector<std::string>{"One here.", "Two!", "Three?"}));
  EXPECT_EQ(seen["model"], "stub-model");
  EXPECT_EQ(seen["prompt"], p.rendered);
  EXPECT_EQ(seen["n"], 3);
  EXPECT_EQ(seen["seed"], 77);
  EXPECT_EQ(seen["max_tokens"], 60);
  EXPECT_DOUBLE_EQ(seen["temperature"].get<double>(), 0.9);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0].raw[0], "One here. And more.");
}

TEST(HttpBackendTest, RefillsMissingCandidates) {
  StubServer stub;
  std::atomic<int> calls{0};
  std::vector<int> asked;
  std::mutex mu;
  stub.server().Post("/v1/completions", [&](const httplib::Request& req, httplib::Response& res) {
    const json body = json::parse(req.body);
    {
      std::lock_guard lock(mu);
      asked.push_back(body["n"].get<int>());
    }
    // First round: one blank and one usable; later rounds answer fully.
    if (calls++ == 0) {
      res.set_content(Choices({"   ", "Good."}).dump(), "application/json");
    } else {
      std::vector<std::string> texts(body["n"].get<int>(), "Fine.");
      res.set_content(Choices(texts).dump(), "application/json");
    }
  });
  stub.Start();
  const auto out = Complete(BuildInfillPrompt("L.", "R.", "en"), 4, StubConfig(stub), 1);
  EXPECT_EQ(out, (std::vector<std::string>{"Good.", "Fine.", "Fine.", "Fine."}));
  EXPECT_EQ(asked, (std::vector<int>{4, 3}));
}

TEST(HttpBackendTest, GivesUpWhenBackendNeverFillsTheGap) {
  StubServer stub;
  stub.server().Post("/v1/completions", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(Choices({""}).dump(), "application/json");
  });
  stub.Start();
  EXPECT_THROW(Complete(BuildInfillPrompt("L.", "R.", "en"), 2, StubConfig(stub, 1), 1),
               ProtocolError);
}

TEST(HttpBackendTest, RetriesServerErrorsThenSucceeds) {
  StubServer stub;
  std::atomic<int> calls{0};
  stub.server().Post("/v1/completions", [&](const httplib::Request&, httplib::Response& res) {
    const int n = calls++;
    if (n == 0) {
      res.status = 429;
    } else if (n == 1) {
      res.status = 503;
    } else {
      res.set_content(Choices({"Ok."}).dump(), "application/json");
    }
  });
  stub.Start();
  EXPECT_EQ(Complete(BuildInfillPrompt("L.", "R.", "en"), 1, StubConfig(stub, 2), 1),
            (std::vector<std::string>{"Ok."}));
  EXPECT_EQ(calls.load(), 3);
}

TEST(HttpBackendTest, PersistentFailureIsTransportError) {
  StubServer stub;
  std::atomic<int> calls{0};
  stub.server().Post("/v1/completions", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 500;
  });
  stub.Start();
  try {
    Complete(BuildInfillPrompt("L.", "R.", "en"), 1, StubConfig(stub, 2), 1);
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_NE(std::string(e.what()).find("HTTP 500"), std::string::npos);
  }
  EXPECT_EQ(calls.load(), 3);
}

TEST(HttpBackendTest, UnreachableEndpointIsTransportError) {
  int port = 0;
  {
    StubServer stub;
    stub.Start();
    port = stub.port();
  }
  BackendConfig cfg;
  cfg.endpoint = "http://127.0.0.1:" + std::to_string(port);
  cfg.max_retries = 0;
  cfg.timeout = 1.0;
  EXPECT_THROW(Complete(BuildInfillPrompt("L.", "R.", "en"), 1, cfg, 1), TransportError);
}

TEST(HttpBackendTest, ClientErrorsAndMalformedBodiesAreProtocolErrors) {
  StubServer stub;
  stub.server().Post("/v1/completions", [](const httplib::Request& req, httplib::Response& res) {
    const std::string mode = json::parse(req.body)["prompt"];
    if (mode.find("bad-status") != std::string::npos) {
      res.status = 400;
      res.set_content("nope", "text/plain");
    } else if (mode.find("not-json") != std::string::npos) {
      res.set_content("<html>", "text/html");
    } else if (mode.find("no-choices") != std::string::npos) {
      res.set_content("{\"result\":1}", "application/json");
    } else {
      res.set_content("{\"choices\":[{\"text\":5}]}", "application/json");
    }
  });
  stub.Start();
  const BackendConfig cfg = StubConfig(stub);
  for (const char* mode : {"bad-status", "not-json", "no-choices", "wrong-type"}) {
    try {
      Complete(BuildInfillPrompt(mode, "R.", "en"), 1, cfg, 1);
      ADD_FAILURE() << mode;
    } catch (const ProtocolError& e) {
      SUCCEED();
    }
  }
}

TEST(HttpBackendTest, BearerTokenComesFromEnvironment) {
  StubServer stub;
  std::string auth;
  std::mutex mu;
  stub.server().Post("/base/v1/completions",
                     [&](const httplib::Request& req, httplib::Response& res) {
                       std::lock_guard lock(mu);
                       auth = req.get_header_value("Authorization");
                       res.set_content(Choices({"Yes."}).dump(), "application/json");
                     });
  stub.Start();
  BackendConfig cfg = StubConfig(stub);
  cfg.endpoint += "/base/";
  cfg.api_key_env = "REVFORGE_TEST_TOKEN";
  ::unsetenv("REVFORGE_TEST_TOKEN");
  EXPECT_THROW(Complete(BuildInfillPrompt("L.", "R.", "en"), 1, cfg, 1), ConfigError);
  ::setenv("REVFORGE_TEST_TOKEN", "s3cret", 1);
  std::vector<CompletionRecord> log;
  Complete(BuildInfillPrompt("L.", "R.", "en"), 1, cfg, 1, &log);
  EXPECT_EQ(auth, "Bearer s3cret");
  EXPECT_EQ(CompletionRecordToJson(log[0]).dump().find("s3cret"), std::string::npos);
  ::unsetenv("REVFORGE_TEST_TOKEN");
}

}  // namespace
}  // namespace revforge::generation
