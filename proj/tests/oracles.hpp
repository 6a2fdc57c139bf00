// Copyright 2026 The landmark-frames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force references used by the unit and acceptance tests. Each one
// enumerates the search space directly and shares no code with the library.

#ifndef LMF_TESTS_ORACLES_HPP_
#define LMF_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense row-major T x S scores, S x S transitions, S initial log-probs.
struct HmmInstance {
  int frames = 0;
  int states = 0;
  std::vector<double> init;
  std::vector<double> trans;
  std::vector<double> scores;
  std::vector<double> weights;  // empty: all ones

  double e(int t, int s) const { return scores[static_cast<std::size_t>(t * states + s)]; }
  double a(int p, int s) const { return trans[static_cast<std::size_t>(p * states + s)]; }
  double w(int t) const { return weights.empty() ? 1.0 : weights[static_cast<std::size_t>(t)]; }
  double we(int t, int s) const {
    const double x = e(t, s);
    return (w(t) == 1.0 || x == -kInf) ? x : w(t) * x;
  }
};

struct BestPath {
  std::vector<int> states;
  double score = -kInf;
};

// Every state sequence, summed in frame order. Among equal scores the path
// that is smallest read from the last frame backwards wins.
inline BestPath best_path_by_enumeration(const HmmInstance& h) {
  BestPath best;
  std::vector<int> path(static_cast<std::size_t>(h.frames), 0);
  auto reverse_less = [](const std::vector<int>& x, const std::vector<int>& y) {
    for (std::size_t i = x.size(); i-- > 0;)
      if (x[i] != y[i]) return x[i] < y[i];
    return false;
  };
  for (;;) {
    double total = h.init[static_cast<std::size_t>(path[0])] + h.we(0, path[0]);
    for (int t = 1; t < h.frames; ++t)
      total = (total + h.a(path[static_cast<std::size_t>(t - 1)], path[static_cast<std::size_t>(t)])) +
              h.we(t, path[static_cast<std::size_t>(t)]);
    if (total > -kInf &&
        (total > best.score || (total == best.score && reverse_less(path, best.states)))) {
      best.score = total;
      best.states = path;
    }
    int t = 0;
    while (t < h.frames && ++path[static_cast<std::size_t>(t)] == h.states) path[static_cast<std::size_t>(t++)] = 0;
    if (t == h.frames) break;
  }
  return best;
}

// Minimum number of insertions, deletions and substitutions over every
// alignment of the two strings.
inline int edit_distance_by_search(const std::vector<std::string>& ref, const std::vector<std::string>& hyp,
                                   std::size_t i = 0, std::size_t j = 0) {
  if (i == ref.size()) return static_cast<int>(hyp.size() - j);
  if (j == hyp.size()) return static_cast<int>(ref.size() - i);
  const int del = edit_distance_by_search(ref, hyp, i + 1, j) + 1;
  const int ins = edit_distance_by_search(ref, hyp, i, j + 1) + 1;
  const int diag = edit_distance_by_search(ref, hyp, i + 1, j + 1) + (ref[i] == hyp[j] ? 0 : 1);
  return std::min({del, ins, diag});
}

// Two-sided signed-rank p by listing all 2^n sign patterns of the non-zero
// differences, ranked with mid-ranks for ties.
inline double wilcoxon_p_by_enumeration(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> mag;
  std::vector<bool> positive;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d == 0.0) continue;
    mag.push_back(std::abs(d));
    positive.push_back(d > 0.0);
  }
  const std::size_t n = mag.size();
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double below = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (mag[j] < mag[i]) ++below;
      if (mag[j] == mag[i]) ++equal;
    }
    rank[i] = below + (equal + 1.0) / 2.0;
  }
  double total = 0, w_plus = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += rank[i];
    if (positive[i]) w_plus += rank[i];
  }
  const double observed = std::min(w_plus, total - w_plus);
  std::uint64_t hits = 0;
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) s += rank[i];
    if (std::min(s, total - s) <= observed + 1e-9) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(patterns);
}

// P(|T| >= |t|) by Simpson's rule on the Student t density, with the tail
// mapped onto [0, 1) through x = |t| + u / (1 - u).
inline double t_two_sided_by_quadrature(double t, double df, int intervals = 200000) {
  const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) / std::sqrt(df * M_PI);
  auto pdf = [&](double x) { return c * std::pow(1.0 + x * x / df, -(df + 1) / 2); };
  auto g = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double one = 1.0 - u;
    return pdf(std::abs(t) + u / one) / (one * one);
  };
  const double h = 1.0 / intervals;
  double sum = g(0.0) + g(1.0);
  for (int i = 1; i < intervals; ++i) sum += g(i * h) * (i % 2 ? 4.0 : 2.0);
  return 2.0 * sum * h / 3.0;
}

}  // namespace oracle

#endif  // LMF_TESTS_ORACLES_HPP_
