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

#ifndef LMF_SCORING_HPP_
#define LMF_SCORING_HPP_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lmf/types.hpp"

namespace lmf {

/// Unit-cost Levenshtein alignment of hyp against ref. On cost ties the
/// backtrace prefers match/substitution, then deletion, then insertion.
PERReport align_edit(const std::vector<std::string>& ref, const std::vector<std::string>& hyp);

/// 100 * (modified - baseline) / baseline. Throws DegenerateBaseline when
/// baseline <= 0.
double per_increment(double baseline_per, double modified_per);

enum class ErrorType { kInsertion, kDeletion, kSubstitution };

std::string_view to_string(ErrorType e);

/// Errors of one type attributed to each phone: insertions to the inserted
/// (hyp) phone, deletions and substitutions to the reference phone.
std::map<std::string, Index> phone_errors(const PERReport& report, ErrorType type);

/// Reference occurrences of each phone, recovered from the confusion map.
std::map<std::string, Index> reference_occurrences(const PERReport& report);

inline constexpr std::string_view kUnseenGroup = "unseen";

using IncrementTable = std::map<std::pair<std::string, ErrorType>, double>;

/// Per phone, (sys errors - base errors) / occurrences for each error type,
/// then an occurrence-weighted mean within each group of `grouping`
/// (phone -> manner name). Phones with errors but no occurrences are summed,
/// unnormalised, under kUnseenGroup. Ungrouped phones fall into "other".
IncrementTable normalized_error_increment(const PERReport& base, const PERReport& sys,
                                          const std::map<std::string, Index>& ref_occurrences,
                                          const std::map<std::string, std::string>& grouping);

/// CSV with header group,error,increment.
std::string write_increment_csv(const IncrementTable& table);

}  // namespace lmf

#endif  // LMF_SCORING_HPP_
