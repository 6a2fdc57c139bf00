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

#include "lmf/scoring.hpp"

#include <set>

#include "lmf/error.hpp"

namespace lmf {

PERReport align_edit(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> cost(n + 1, m + 1);
  for (std::size_t i = 0; i <= n; ++i) cost(i, 0) = static_cast<Index>(i);
  for (std::size_t j = 0; j <= m; ++j) cost(0, j) = static_cast<Index>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const Index diag = cost(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cost(i, j) = std::min({diag, cost(i - 1, j) + 1, cost(i, j - 1) + 1});
    }
  }

  PERReport report;
  report.n_ref = static_cast<Index>(n);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        cost(i, j) == cost(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++report.sub;
      ++report.confusion[{ref[i - 1], hyp[j - 1]}];
      --i;
      --j;
    } else if (i > 0 && cost(i, j) == cost(i - 1, j) + 1) {
      ++report.del;
      ++report.confusion[{ref[i - 1], std::string(kDelToken)}];
      --i;
    } else {
      ++report.ins;
      ++report.confusion[{std::string(kInsToken), hyp[j - 1]}];
      --j;
    }
  }
  return report;
}

double per_increment(double baseline_per, double modified_per) {
  if (!(baseline_per > 0.0))
    fail(ErrorCode::kDegenerateBaseline, "baseline PER must be positive");
  return 100.0 * (modified_per - baseline_per) / baseline_per;
}

std::string_view to_string(ErrorType e) {
  switch (e) {
    case ErrorType::kInsertion: return "ins";
    case ErrorType::kDeletion: return "del";
    case ErrorType::kSubstitution: return "sub";
  }
  return "ins";
}

std::map<std::string, Index> phone_errors(const PERReport& report, ErrorType type) {
  std::map<std::string, Index> out;
  for (const auto& [key, count] : report.confusion) {
    const auto& [ref, hyp] = key;
    switch (type) {
      case ErrorType::kInsertion:
        if (ref == kInsToken) out[hyp] += count;
        break;
      case ErrorType::kDeletion:
        if (hyp == kDelToken) out[ref] += count;
        break;
      case ErrorType::kSubstitution:
        if (ref != kInsToken && hyp != kDelToken && ref != hyp) out[ref] += count;
        break;
    }
  }
  return out;
}

std::map<std::string, Index> reference_occurrences(const PERReport& report) {
  std::map<std::string, Index> out;
  for (const auto& [key, count] : report.confusion)
    if (key.first != kInsToken) out[key.first] += count;
  return out;
}

IncrementTable normalized_error_increment(const PERReport& base, const PERReport& sys,
                                          const std::map<std::string, Index>& ref_occurrences,
                                          const std::map<std::string, std::string>& grouping) {
  auto group_of = [&](const std::string& phone) -> std::string {
    auto it = grouping.find(phone);
    return it == grouping.end() ? "other" : it->second;
  };

  std::map<std::string, double> occurrences;  // per group
  for (const auto& [phone, occ] : ref_occurrences)
    if (occ > 0) occurrences[group_of(phone)] += static_cast<double>(occ);

  IncrementTable out;
  for (ErrorType type : {ErrorType::kInsertion, ErrorType::kDeletion, ErrorType::kSubstitution}) {
    for (const auto& [group, occ] : occurrences) {
      (void)occ;
      out[{group, type}] = 0.0;
    }
    auto base_err = phone_errors(base, type);
    auto sys_err = phone_errors(sys, type);
    std::set<std::string> phones;
    for (const auto& [p, c] : base_err) phones.insert(p);
    for (const auto& [p, c] : sys_err) phones.insert(p);

    for (const auto& phone : phones) {
      const double delta = static_cast<double>((sys_err.contains(phone) ? sys_err[phone] : 0) -
                                               (base_err.contains(phone) ? base_err[phone] : 0));
      if (delta == 0.0) continue;
      auto occ = ref_occurrences.find(phone);
      if (occ == ref_occurrences.end() || occ->second == 0) {
        out[{std::string(kUnseenGroup), type}] += delta;
      } else {
        // Occurrence-weighted mean of delta/occ over the group reduces to
        // sum(delta) / sum(occ).
        const std::string g = group_of(phone);
        out[{g, type}] += delta / occurrences[g];
      }
    }
  }
  return out;
}

std::string write_increment_csv(const IncrementTable& table) {
  std::string out = "group,error,increment\n";
  for (const auto& [key, value] : table)
    out += key.first + "," + std::string(to_string(key.second)) + "," + format_double(value) + "\n";
  return out;
}

}  // namespace lmf
