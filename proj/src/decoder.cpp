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

#include "lmf/decoder.hpp"

namespace lmf {
namespace {

std::string join_row(const auto& row) {
  std::string out;
  for (Index i = 0; i < row.size(); ++i) {
    if (i > 0) out += ' ';
    out += format_double(static_cast<double>(row(i)));
  }
  out += '\n';
  return out;
}

void parse_row(std::string_view line, Index width, auto&& sink, const char* what) {
  auto tok = split_ws(line);
  if (static_cast<Index>(tok.size()) != width)
    fail(ErrorCode::kFormatError, std::string(what) + " has wrong width");
  for (Index i = 0; i < width; ++i) {
    auto v = parse_double(tok[static_cast<std::size_t>(i)]);
    if (!v || std::isnan(*v) || *v == std::numeric_limits<double>::infinity())
      fail(ErrorCode::kFormatError, std::string(what) + " has a bad number");
    sink(i, *v);
  }
}

}  // namespace

std::string write_transition_model(const TransitionModel& tm) {
  tm.validate();
  std::string out = std::to_string(tm.senones()) + "\n";
  out += join_row(tm.init);
  for (Index i = 0; i < tm.senones(); ++i) out += join_row(tm.trans.row(i));
  for (Index i = 0; i < tm.senones(); ++i)
    out += std::to_string(i) + " " + tm.senone_to_phone[static_cast<std::size_t>(i)] + "\n";
  return out;
}

TransitionModel read_transition_model(std::string_view text) {
  std::vector<std::string_view> rows;
  for (auto l : lines(text))
    if (!trim(l).empty()) rows.push_back(l);
  if (rows.empty()) fail(ErrorCode::kFormatError, "empty transition model");
  auto n = parse_int(trim(rows[0]));
  if (!n || *n < 1) fail(ErrorCode::kFormatError, "bad senone count");
  const Index s = static_cast<Index>(*n);
  if (static_cast<Index>(rows.size()) != 2 + 2 * s)
    fail(ErrorCode::kFormatError, "expected " + std::to_string(2 + 2 * s) + " non-empty lines");

  TransitionModel tm;
  tm.init.resize(s);
  tm.trans.resize(s, s);
  tm.senone_to_phone.resize(static_cast<std::size_t>(s));
  parse_row(rows[1], s, [&](Index i, double v) { tm.init(i) = v; }, "init line");
  for (Index r = 0; r < s; ++r)
    parse_row(rows[static_cast<std::size_t>(2 + r)], s, [&](Index i, double v) { tm.trans(r, i) = v; },
              "transition line");
  for (Index r = 0; r < s; ++r) {
    auto tok = split_ws(rows[static_cast<std::size_t>(2 + s + r)]);
    auto id = tok.size() == 2 ? parse_int(tok[0]) : std::nullopt;
    if (!id || *id != r) fail(ErrorCode::kFormatError, "bad senone mapping line for senone " + std::to_string(r));
    tm.senone_to_phone[static_cast<std::size_t>(r)] = std::string(tok[1]);
  }
  tm.validate();
  return tm;
}

std::vector<std::string> collapse_labels(const std::vector<std::string>& labels,
                                         const CollapseOptions& opts) {
  std::vector<std::string> merged;
  for (const auto& raw : labels) {
    auto it = opts.folding.find(raw);
    const std::string& label = it == opts.folding.end() ? raw : it->second;
    if (merged.empty() || merged.back() != label) merged.push_back(label);
  }
  if (!opts.drop_silence) return merged;
  std::vector<std::string> out;
  for (auto& p : merged)
    if (!opts.silence.contains(p)) out.push_back(std::move(p));
  return out;
}

std::vector<std::string> collapse_states(const std::vector<Index>& states,
                                         const std::vector<std::string>& senone_to_phone,
                                         const CollapseOptions& opts) {
  if (states.empty()) fail(ErrorCode::kEmptyInput, "no states to collapse");
  std::vector<std::string> labels;
  labels.reserve(states.size());
  Index prev = -1;
  for (Index s : states) {
    if (s < 0 || s >= static_cast<Index>(senone_to_phone.size()) ||
        senone_to_phone[static_cast<std::size_t>(s)].empty()) {
      fail(ErrorCode::kUnknownSenone, "senone " + std::to_string(s) + " has no phone");
    }
    if (s != prev || labels.empty()) labels.push_back(senone_to_phone[static_cast<std::size_t>(s)]);
    prev = s;
  }
  return collapse_labels(labels, opts);
}

std::vector<std::string> reference_phones(const PhoneAlignment& alignment,
                                          const CollapseOptions& opts) {
  std::vector<std::string> labels;
  labels.reserve(alignment.segments.size());
  for (const auto& seg : alignment.segments) labels.push_back(seg.phone);
  return collapse_labels(labels, opts);
}

}  // namespace lmf
