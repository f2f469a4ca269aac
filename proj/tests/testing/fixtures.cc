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

#include "testing/fixtures.h"

#include <unistd.h>

#include <array>
#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "revforge/common/hash.h"
#include "revforge/corpus/io.h"

namespace revforge::testing {
namespace fs = std::filesystem;

namespace {

constexpr std::array<const char*, 40> kWords = {
    "book",    "story",  "hotel",   "room",    "food",    "staff",   "price",  "place",
    "great",   "bad",    "nice",    "slow",    "fresh",   "cold",    "warm",   "quiet",
    "really",  "very",   "quite",   "never",   "always",  "again",   "today",  "here",
    "we",      "they",   "it",      "was",     "were",    "is",      "felt",   "seemed",
    "enjoyed", "liked",  "visited", "ordered", "read",    "stayed",  "waited", "paid"};

constexpr std::array<const char*, 24> kHanzi = {"菜", "味", "道", "好", "店", "服", "务", "员",
                                                "价", "格", "环", "境", "汤", "包", "很", "不",
                                                "错", "还", "会", "来", "吃", "便", "宜", "多"};

std::size_t Below(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(UniformBelow(rng, bound));
}

std::string ChineseSentence(std::mt19937_64& rng) {
  std::string s;
  const std::size_t len = 4 + Below(rng, 8);
  for (std::size_t i = 0; i < len; ++i) s += kHanzi[Below(rng, kHanzi.size())];
  return s + "。";
}

}  // namespace

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("revforge_" + tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void WriteFile(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string RandomSentence(std::mt19937_64& rng, bool terminate) {
  std::string s;
  const std::size_t len = 3 + Below(rng, 10);
  for (std::size_t i = 0; i < len; ++i) {
    if (i) s += ' ';
    s += kWords[Below(rng, kWords.size())];
  }
  if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return terminate ? s + "." : s;
}

TextPair RandomTextPair(std::mt19937_64& rng) {
  std::vector<std::string> ref;
  const std::size_t sentences = 1 + Below(rng, 3);
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t len = 2 + Below(rng, 12);
    for (std::size_t i = 0; i < len; ++i) {
      std::string w(kWords[Below(rng, kWords.size())]);
      if (Below(rng, 12) == 0) w += "'s";
      if (Below(rng, 3) == 0) w[0] = static_cast<char>(w[0] - 'a' + 'A');
      ref.push_back(w);
      if (i + 1 < len && Below(rng, 8) == 0) ref.push_back(",");
    }
    ref.push_back(Below(rng, 4) == 0 ? "!" : ".");
  }
  std::vector<std::string> cand;
  const std::size_t mode = Below(rng, 4);  // 0-2: fewer edits as mode grows; 3: unrelated
  if (mode == 3) {
    const std::size_t len = 1 + Below(rng, 15);
    for (std::size_t i = 0; i < len; ++i) cand.emplace_back(kWords[Below(rng, kWords.size())]);
  } else {
    const std::size_t edit_rate = 2 + 3 * mode;  // one edit per this many words
    for (const auto& w : ref) {
      const std::size_t roll = Below(rng, edit_rate * 3);
      if (roll == 0) continue;  // drop
      if (roll == 1) {
        cand.emplace_back(kWords[Below(rng, kWords.size())]);  // substitute
      } else if (roll == 2 && !cand.empty()) {
        cand.insert(cand.end() - 1, w);  // swap with the previous word
      } else {
        cand.push_back(w);
      }
    }
    if (cand.empty()) cand.push_back(ref.front());
  }
  auto join = [](const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
      const bool glue = w == "," || w == "." || w == "!";
      if (!out.empty() && !glue) out += ' ';
      out += w;
    }
    return out;
  };
  return {join(cand), join(ref)};
}

corpus::LabeledDataset ToyCorpus(const ToyCorpusOptions& o) {
  std::mt19937_64 rng(o.seed);
  corpus::LabeledDataset ds;
  ds.name = o.name;
  ds.language = std::string(LanguageTag(o.language));
  // Alternate classes while both remain so prefixes of the corpus stay mixed.
  std::vector<corpus::Label> labels;
  for (std::size_t r = 0, f = 0; r < o.n_real || f < o.n_fake;) {
    if (r < o.n_real) {
      labels.push_back(corpus::Label::kReal);
      ++r;
    }
    if (f < o.n_fake) {
      labels.push_back(corpus::Label::kFake);
      ++f;
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const corpus::Label label = labels[i];
    const std::size_t n_sent =
        o.min_sentences + Below(rng, o.max_sentences - o.min_sentences + 1);
    const bool marked = label == corpus::Label::kFake && !o.fake_marker.empty() &&
                        std::uniform_real_distribution<double>(0, 1)(rng) < o.marker_rate;
    std::vector<std::string> sentences;
    for (std::size_t s = 0; s < n_sent; ++s) {
      std::string sentence;
      if (o.language == Language::kChinese) {
        sentence = ChineseSentence(rng);
        if (marked && (s == 0 || s + 1 == n_sent)) {
          sentence.insert(sentence.size() - std::string("。").size(), o.fake_marker);
        }
      } else {
        sentence = RandomSentence(rng, false);
        if (marked && (s == 0 || s + 1 == n_sent)) sentence += " " + o.fake_marker;
        sentence += ".";
      }
      sentences.push_back(sentence);
    }
    corpus::Review r;
    r.id = o.name + "-" + std::to_string(i + 1);
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      if (s && o.language == Language::kEnglish) r.text += ' ';
      r.text += sentences[s];
    }
    r.label = label;
    r.dataset = o.name;
    r.language = ds.language;
    ds.reviews.push_back(std::move(r));
  }
  return ds;
}

fs::path WriteToyExperiment(const fs::path& dir, const ToyExperimentOptions& o) {
  ToyCorpusOptions corpus_options = o.corpus;
  corpus_options.name = o.tag;
  std::ostringstream data;
  corpus::WriteJsonLines(ToyCorpus(corpus_options), data);
  WriteFile(dir / "data" / (o.tag + ".jsonl"), data.str());

  nlohmann::ordered_json config = {
      {"datasets",
       {{o.tag,
         {{"path", "data/" + o.tag + ".jsonl"},
          {"schema", "generic"},
          {"language", std::string(LanguageTag(corpus_options.language))}}}}},
      {"test_set", {{"dataset", o.tag}, {"split_seed", o.split_seed}, {"fraction", o.test_fraction}}},
      {"presets", o.presets},
      {"classifiers",
       {{{"id", "svm"}, {"type", "native_svm"}, {"hash_bits", o.hash_bits}, {"seed", 1}}}},
      {"generation",
       {{"backend", {{"endpoint", "mock://"}}},
        {"target_length", o.target_length},
        {"fan_out", 10},
        {"seed", o.generation_seed}}},
      {"output_dir", o.output_dir},
      {"max_parallel_cells", o.max_parallel_cells}};
  WriteFile(dir / "config.json", config.dump(2));
  return dir / "config.json";
}

StubServer::StubServer() = default;

void StubServer::Start() {
  port_ = server_.bind_to_any_port("127.0.0.1");
  thread_ = std::thread([this] { server_.listen_after_bind(); });
  server_.wait_until_ready();
}

StubServer::~StubServer() {
  server_.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace revforge::testing
