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

#include "testing/oracles.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <regex>
#include <sstream>

namespace revforge::testing {

std::vector<std::string> RegexWordPunctTokens(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  static const std::regex kToken(R"([A-Za-z0-9_]+|[^A-Za-z0-9_\s])");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(lower.begin(), lower.end(), kToken);
       it != std::sregex_iterator(); ++it) {
    out.push_back(it->str());
  }
  return out;
}

OracleBleu BruteForceBleu(const std::vector<std::string>& c, const std::vector<std::string>& r) {
  OracleBleu out;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t total = 0;
    std::size_t matched = 0;
    if (c.size() >= n) {
      total = c.size() - n + 1;
      // For each distinct candidate n-gram: min(count in c, count in r).
      std::vector<bool> seen(total, false);
      for (std::size_t i = 0; i < total; ++i) {
        if (seen[i]) continue;
        std::size_t in_c = 0;
        for (std::size_t j = i; j < total; ++j) {
          if (std::equal(c.begin() + i, c.begin() + i + n, c.begin() + j)) {
            seen[j] = true;
            ++in_c;
          }
        }
        std::size_t in_r = 0;
        for (std::size_t j = 0; r.size() >= n && j + n <= r.size(); ++j) {
          if (std::equal(c.begin() + i, c.begin() + i + n, r.begin() + j)) ++in_r;
        }
        matched += std::min(in_c, in_r);
      }
    }
    const double p = total == 0 ? 0.0 : static_cast<double>(matched) / total;
    out.precision[n - 1] = p;
    log_sum += std::log(p > 0.0 ? p : std::numeric_limits<double>::min()) / 4.0;
  }
  const double cl = static_cast<double>(c.size());
  const double rl = static_cast<double>(r.size());
  out.brevity_penalty = cl >= rl ? 1.0 : std::exp(1.0 - rl / cl);
  out.score = out.brevity_penalty * std::exp(log_sum);
  return out;
}

double BagOfWordsCosine(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::map<std::string, double> ta;
  std::map<std::string, double> tb;
  for (const auto& t : a) ta[t] += 1;
  for (const auto& t : b) tb[t] += 1;
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (const auto& [k, v] : ta) {
    na += v * v;
    if (tb.count(k)) dot += v * tb[k];
  }
  for (const auto& [k, v] : tb) nb += v * v;
  if (na == 0 || nb == 0) return 0.0;
  return dot / std::sqrt(na * nb);
}

double BatchObjective(const std::vector<std::map<std::uint32_t, double>>& x,
                      const std::vector<int>& y, const std::map<std::uint32_t, double>& w,
                      double bias, double lambda) {
  double loss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double m = bias;
    for (const auto& [k, v] : x[i]) {
      const auto it = w.find(k);
      if (it != w.end()) m += it->second * v;
    }
    loss += std::max(0.0, 1.0 - y[i] * m);
  }
  double sq = 0;
  for (const auto& [k, v] : w) sq += v * v;
  return 0.5 * lambda * sq + loss / x.size();
}

BatchSvmResult BatchSubgradientSvm(const std::vector<std::map<std::uint32_t, double>>& x,
                                   const std::vector<int>& y, double lambda,
                                   int iterations) {
  std::map<std::uint32_t, double> w;
  for (const auto& xi : x) {
    for (const auto& [k, v] : xi) w[k] = 0.0;
  }
  double b = 0.0;
  BatchSvmResult best;
  best.weights = w;
  best.objective = BatchObjective(x, y, w, b, lambda);
  const double n = static_cast<double>(x.size());
  for (int t = 1; t <= iterations; ++t) {
    std::map<std::uint32_t, double> g;
    for (const auto& [k, v] : w) g[k] = lambda * v;
    double gb = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double m = b;
      for (const auto& [k, v] : x[i]) m += w[k] * v;
      if (y[i] * m < 1.0) {
        for (const auto& [k, v] : x[i]) g[k] -= y[i] * v / n;
        gb -= y[i] / n;
      }
    }
    const double eta = 1.0 / (lambda * (t + 1.0 / lambda));
    for (auto& [k, v] : w) v -= eta * g[k];
    b -= eta * gb;
    const double obj = BatchObjective(x, y, w, b, lambda);
    if (obj < best.objective) {
      best.objective = obj;
      best.weights = w;
      best.bias = b;
    }
  }
  return best;
}

std::map<std::string, std::size_t> ExactNgramCounts(const std::string& text, int max_order) {
  std::vector<std::string> words;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c >= 0x80 || c == '_') {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      words.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(current);
  std::map<std::string, std::size_t> counts;
  for (int n = 1; n <= max_order; ++n) {
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      std::string gram = words[i];
      for (int k = 1; k < n; ++k) gram += " " + words[i + k];
      ++counts[gram];
    }
  }
  return counts;
}

}  // namespace revforge::testing
