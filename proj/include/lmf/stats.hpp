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

#ifndef LMF_STATS_HPP_
#define LMF_STATS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmf/types.hpp"

namespace lmf {

/// Outcome of a significance test. Degenerate inputs (no non-zero
/// differences, zero variance) are reported with degenerate = true, p = 1,
/// rather than thrown.
struct TestResult {
  std::string name;
  double statistic = 0.0;
  std::optional<double> df;
  double p = 1.0;
  bool degenerate = false;
};

enum class WilcoxonMethod {
  kAuto,    // exact for n <= 25 non-zero differences, normal otherwise
  kExact,
  kNormal,
};

inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// Two-sided Wilcoxon signed-rank test on d_i = a_i - b_i. Zero differences
/// are discarded; tied |d_i| share their mid-rank. The statistic is
/// W = min(W+, W-). The exact p counts all 2^n sign assignments whose W is no
/// larger than the observed one; the normal approximation is tie-corrected
/// with a continuity correction.
TestResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs,
                                WilcoxonMethod method = WilcoxonMethod::kAuto);

/// Welch's unequal-variance two-sample t test with Welch-Satterthwaite df.
TestResult welch_t(std::span<const double> a, std::span<const double> b);

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with df degrees of freedom.
double student_t_two_sided(double t, double df);

/// "**" for p < 0.001, "*" for p < 0.05, "ns" otherwise.
std::string_view significance(double p);

struct Speaker {
  std::string id;
  Gender gender = Gender::kUnknown;
};

struct FoldSpec {
  int k = 0;
  std::vector<std::vector<std::string>> folds;  // speaker ids, sorted
  std::map<std::string, Gender> gender;

  /// Fold index of a speaker, or -1.
  int fold_of(const std::string& speaker) const;
};

/// Speaker-disjoint folds. Each gender is shuffled separately with the seed
/// and dealt round-robin, continuing the rotation across genders so fold
/// sizes also differ by at most one.
FoldSpec cv_folds(std::vector<Speaker> speakers, int k, std::uint64_t seed);

struct Summary {
  double mean = 0.0;
  double stdev = 0.0;  // sample (n - 1) standard deviation
};

Summary summarize_cv(std::span<const double> values);

/// CSV: test,statistic,df,p,verdict. Missing df and degenerate tests are
/// written as NA.
std::string write_stats_csv(const std::vector<TestResult>& results);

}  // namespace lmf

#endif  // LMF_STATS_HPP_
