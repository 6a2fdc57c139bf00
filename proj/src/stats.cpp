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

#include "lmf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lmf/error.hpp"

namespace lmf {
namespace {

// Mid-ranks of |d|, doubled so they are integers.
std::vector<long long> doubled_midranks(const std::vector<double>& abs_d) {
  const std::size_t n = abs_d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return abs_d[x] < abs_d[y]; });
  std::vector<long long> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && abs_d[order[j + 1]] == abs_d[order[i]]) ++j;
    // ranks i+1..j+1 averaged, doubled: (i+1 + j+1)
    const long long r2 = static_cast<long long>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r2;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

TestResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs,
                                WilcoxonMethod method) {
  TestResult res;
  res.name = "wilcoxon";
  if (pairs.empty()) fail(ErrorCode::kEmptyInput, "wilcoxon needs at least one pair");

  std::vector<double> abs_d;
  std::vector<bool> positive;
  for (const auto& [a, b] : pairs) {
    const double d = a - b;
    if (d == 0.0) continue;
    abs_d.push_back(std::abs(d));
    positive.push_back(d > 0.0);
  }
  const std::size_t n = abs_d.size();
  if (n == 0) {
    res.degenerate = true;
    return res;
  }

  const auto ranks = doubled_midranks(abs_d);
  long long total2 = 0;
  long long plus2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += ranks[i];
    if (positive[i]) plus2 += ranks[i];
  }
  const long long w2 = std::min(plus2, total2 - plus2);
  res.statistic = static_cast<double>(w2) / 2.0;

  const bool exact = method == WilcoxonMethod::kExact ||
                     (method == WilcoxonMethod::kAuto && n <= kWilcoxonExactLimit);
  if (exact) {
    // counts[s] = number of sign assignments whose positive doubled-rank sum is s.
    std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
    counts[0] = 1.0;
    long long reach = 0;
    for (long long r : ranks) {
      for (long long s = reach; s >= 0; --s)
        if (counts[static_cast<std::size_t>(s)] != 0.0)
          counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
      reach += r;
    }
    double hit = 0.0;
    for (long long s = 0; s <= total2; ++s)
      if (std::min(s, total2 - s) <= w2) hit += counts[static_cast<std::size_t>(s)];
    res.p = std::min(1.0, std::ldexp(hit, -static_cast<int>(n)));
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    double tie_term = 0.0;
    std::map<long long, double> tie_sizes;
    for (long long r : ranks) tie_sizes[r] += 1.0;
    for (const auto& [r, t] : tie_sizes) tie_term += t * t * t - t;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    const double z = std::max(0.0, std::abs(res.statistic - mean) - 0.5) / std::sqrt(var);
    res.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  }
  return res;
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - incomplete_beta(b, a, 1.0 - x);

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  // Modified Lentz evaluation of the continued fraction.
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double f = d;
  for (int m = 1; m <= 10000; ++m) {
    const double mm = static_cast<double>(m);
    double num = mm * (b - mm) * x / ((a + 2.0 * mm - 1.0) * (a + 2.0 * mm));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    f *= d * c;
    num = -(a + mm) * (a + b + mm) * x / ((a + 2.0 * mm) * (a + 2.0 * mm + 1.0));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_front) * f / a;
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) fail(ErrorCode::kDegenerateTest, "t distribution needs df > 0");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

std::string_view significance(double p) {
  if (p < 0.001) return "**";
  if (p < 0.05) return "*";
  return "ns";
}

TestResult welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    fail(ErrorCode::kDegenerateTest, "welch_t needs at least two samples per group");
  auto moments = [](std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::pair{mean, ss / (n - 1.0)};
  };
  const auto [ma, va] = moments(a);
  const auto [mb, vb] = moments(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  TestResult res;
  res.name = "welch_t";
  const double qa = va / na;
  const double qb = vb / nb;
  if (qa + qb == 0.0) {
    res.degenerate = true;
    return res;
  }
  res.statistic = (ma - mb) / std::sqrt(qa + qb);
  res.df = (qa + qb) * (qa + qb) / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
  res.p = student_t_two_sided(res.statistic, *res.df);
  return res;
}

int FoldSpec::fold_of(const std::string& speaker) const {
  for (std::size_t f = 0; f < folds.size(); ++f)
    if (std::binary_search(folds[f].begin(), folds[f].end(), speaker)) return static_cast<int>(f);
  return -1;
}

FoldSpec cv_folds(std::vector<Speaker> speakers, int k, std::uint64_t seed) {
  if (k < 2) fail(ErrorCode::kInvalidConfig, "cross validation needs k >= 2");
  if (static_cast<int>(speakers.size()) < k)
    fail(ErrorCode::kInvalidConfig, "fewer speakers than folds");

  FoldSpec spec;
  spec.k = k;
  spec.folds.resize(static_cast<std::size_t>(k));
  std::map<Gender, std::vector<std::string>> groups;
  for (const auto& s : speakers) {
    if (!spec.gender.emplace(s.id, s.gender).second)
      fail(ErrorCode::kInvalidConfig, "duplicate speaker '" + s.id + "'");
    groups[s.gender].push_back(s.id);
  }

  std::size_t slot = 0;
  for (auto& [gender, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(gender)));
    rng.shuffle(ids);
    for (const auto& id : ids) spec.folds[slot++ % static_cast<std::size_t>(k)].push_back(id);
  }
  for (auto& f : spec.folds) std::sort(f.begin(), f.end());
  return spec;
}

Summary summarize_cv(std::span<const double> values) {
  if (values.size() < 2) fail(ErrorCode::kInvalidConfig, "summary needs at least two folds");
  const double n = static_cast<double>(values.size());
  Summary s;
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
    s.mean = values[0];
    return s;
  }
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stdev = std::sqrt(ss / (n - 1.0));
  return s;
}

std::string write_stats_csv(const std::vector<TestResult>& results) {
  std::string out = "test,statistic,df,p,verdict\n";
  for (const auto& r : results) {
    out += r.name + ",";
    if (r.degenerate) {
      out += "NA,NA,NA,degenerate\n";
      continue;
    }
    out += format_double(r.statistic) + "," + (r.df ? format_double(*r.df) : "NA") + "," +
           format_double(r.p) + "," + std::string(significance(r.p)) + "\n";
  }
  return out;
}

}  // namespace lmf
