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

#include "lmf/corpus_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <set>

#include "lmf/error.hpp"

namespace lmf {
namespace {

std::string line_ref(int line) { return "line " + std::to_string(line); }

// '#' opens a comment at line start or after whitespace, so labels such as
// "h#" survive.
std::string_view strip_comment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t'))
      return trim(line.substr(0, i));
  }
  return trim(line);
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(std::string_view bytes, std::size_t pos, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
  return v;
}

Index parse_index(std::string_view tok, int line, const char* what) {
  auto v = parse_int(tok);
  if (!v) {
    fail(ErrorCode::kParseError,
         line_ref(line) + ": " + what + " '" + std::string(tok) + "' is not an integer");
  }
  return static_cast<Index>(*v);
}

}  // namespace

PhoneAlignment parse_alignment(std::string_view text, const FrameTiming& timing,
                               TimeUnit unit, std::string utterance_id) {
  timing.validate();
  PhoneAlignment out;
  out.utterance_id = std::move(utterance_id);

  int line_no = 0;
  Index prev_end = 0;
  for (auto raw : lines(text)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty()) continue;
    auto tok = split_ws(line);
    if (tok.size() != 3)
      fail(ErrorCode::kParseError, line_ref(line_no) + ": expected 'start end phone'");
    Index start = parse_index(tok[0], line_no, "start");
    Index end = parse_index(tok[1], line_no, "end");
    if (start < 0 || end <= start)
      fail(ErrorCode::kMalformedAlignment, line_ref(line_no) + ": empty or negative segment");
    // Contiguity is checked in the input unit; frame conversion could hide
    // a sub-frame gap.
    if (start != prev_end) {
      fail(ErrorCode::kMalformedAlignment,
           line_ref(line_no) + (start < prev_end ? ": overlaps previous segment"
                                                 : ": gap after previous segment"));
    }
    prev_end = end;
    if (unit == TimeUnit::kSamples) {
      start = timing.sample_to_frame(start);
      end = timing.sample_to_frame(end);
      if (end == start) continue;
    }
    out.segments.push_back({std::string(tok[2]), start, end});
  }
  out.validate();
  return out;
}

std::string write_alignment(const PhoneAlignment& alignment) {
  std::string out;
  for (const auto& s : alignment.segments) {
    out += std::to_string(s.start);
    out += ' ';
    out += std::to_string(s.end);
    out += ' ';
    out += s.phone;
    out += '\n';
  }
  return out;
}

void validate_score_matrix(const ScoreMatrix& m) {
  if (m.frames() < 1 || m.senones() < 1)
    fail(ErrorCode::kFormatError, "score matrix must have T >= 1 and S >= 1");
  for (Index t = 0; t < m.frames(); ++t) {
    for (Index s = 0; s < m.senones(); ++s) {
      double v = m.values(t, s);
      if (!std::isfinite(v) && !is_neg_inf(v)) {
        fail(ErrorCode::kFormatError, "non-finite score at frame " + std::to_string(t) +
                                          ", senone " + std::to_string(s));
      }
    }
  }
}

ScoreMatrix read_score_matrix(std::string_view bytes, std::string utterance_id) {
  if (bytes.size() < 12) fail(ErrorCode::kFormatError, "truncated score matrix header");
  if (bytes.substr(0, 4) != kScoreMagic) fail(ErrorCode::kFormatError, "bad magic");
  const auto frames = static_cast<Index>(get_le(bytes, 4, 4));
  const auto senones = static_cast<Index>(get_le(bytes, 8, 4));
  const std::size_t want = 12 + 8 * static_cast<std::size_t>(frames) *
                                    static_cast<std::size_t>(senones);
  if (bytes.size() < want) fail(ErrorCode::kFormatError, "truncated score matrix payload");
  if (bytes.size() > want) fail(ErrorCode::kFormatError, "trailing bytes after score matrix");

  ScoreMatrix m(std::move(utterance_id), ScoreMatrix::Matrix(frames, senones));
  std::size_t pos = 12;
  for (Index t = 0; t < frames; ++t) {
    for (Index s = 0; s < senones; ++s, pos += 8)
      m.values(t, s) = std::bit_cast<double>(get_le(bytes, pos, 8));
  }
  validate_score_matrix(m);
  return m;
}

std::string write_score_matrix(const ScoreMatrix& m) {
  validate_score_matrix(m);
  std::string out;
  out.reserve(12 + 8 * static_cast<std::size_t>(m.values.size()));
  out += kScoreMagic;
  put_u32(out, static_cast<std::uint32_t>(m.frames()));
  put_u32(out, static_cast<std::uint32_t>(m.senones()));
  for (Index t = 0; t < m.frames(); ++t)
    for (Index s = 0; s < m.senones(); ++s)
      put_u64(out, std::bit_cast<std::uint64_t>(m.values(t, s)));
  return out;
}

ScoreMatrix read_score_matrix_text(std::string_view text, std::string utterance_id) {
  std::vector<std::string_view> rows;
  for (auto l : lines(text))
    if (!trim(l).empty()) rows.push_back(l);
  if (rows.empty()) fail(ErrorCode::kFormatError, "empty score matrix text");
  auto header = split_ws(rows[0]);
  if (header.size() != 2) fail(ErrorCode::kFormatError, "header must be 'T S'");
  auto frames = parse_int(header[0]);
  auto senones = parse_int(header[1]);
  if (!frames || !senones || *frames < 1 || *senones < 1)
    fail(ErrorCode::kFormatError, "bad score matrix header");
  if (static_cast<long long>(rows.size()) - 1 != *frames)
    fail(ErrorCode::kFormatError, "expected " + std::to_string(*frames) + " rows");

  ScoreMatrix m(std::move(utterance_id), ScoreMatrix::Matrix(*frames, *senones));
  for (Index t = 0; t < *frames; ++t) {
    auto tok = split_ws(rows[static_cast<std::size_t>(t) + 1]);
    if (static_cast<long long>(tok.size()) != *senones)
      fail(ErrorCode::kFormatError, "row " + std::to_string(t) + " has wrong width");
    for (Index s = 0; s < *senones; ++s) {
      auto v = parse_double(tok[static_cast<std::size_t>(s)]);
      if (!v) fail(ErrorCode::kFormatError, "bad number in row " + std::to_string(t));
      m.values(t, s) = *v;
    }
  }
  validate_score_matrix(m);
  return m;
}

std::string write_score_matrix_text(const ScoreMatrix& m) {
  validate_score_matrix(m);
  std::string out = std::to_string(m.frames()) + " " + std::to_string(m.senones()) + "\n";
  for (Index t = 0; t < m.frames(); ++t) {
    for (Index s = 0; s < m.senones(); ++s) {
      if (s > 0) out += ' ';
      out += format_double(m.values(t, s));
    }
    out += '\n';
  }
  return out;
}

std::string write_mask(const FrameMask& mask) {
  if (mask.frames() == 0) fail(ErrorCode::kFormatError, "empty mask");
  std::string out;
  for (Index t = 0; t < mask.frames(); ++t) {
    out += std::to_string(t);
    out += mask.dropped(t) ? " 1\n" : " 0\n";
  }
  return out;
}

FrameMask read_mask(std::string_view text) {
  std::vector<bool> flags;
  int line_no = 0;
  for (auto raw : lines(text)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty()) continue;
    auto tok = split_ws(line);
    if (tok.size() != 2) fail(ErrorCode::kFormatError, line_ref(line_no) + ": expected 't 0|1'");
    auto t = parse_int(tok[0]);
    if (!t || *t != static_cast<long long>(flags.size())) {
      fail(ErrorCode::kFormatError, line_ref(line_no) + ": expected frame " +
                                        std::to_string(flags.size()));
    }
    if (tok[1] != "0" && tok[1] != "1")
      fail(ErrorCode::kFormatError, line_ref(line_no) + ": flag must be 0 or 1");
    flags.push_back(tok[1] == "1");
  }
  if (flags.empty()) fail(ErrorCode::kFormatError, "empty mask");
  FrameMask mask(static_cast<Index>(flags.size()));
  for (std::size_t t = 0; t < flags.size(); ++t) mask.dropped(static_cast<Index>(t)) = flags[t];
  return mask;
}

std::string write_landmarks(const LandmarkSet& lms) {
  std::string out;
  for (const auto& e : lms.events) {
    out += std::to_string(e.frame);
    out += ' ';
    out += to_string(e.type);
    out += '\n';
  }
  return out;
}

LandmarkSet read_landmarks(std::string_view text, std::string utterance_id) {
  LandmarkSet out;
  out.utterance_id = std::move(utterance_id);
  int line_no = 0;
  for (auto raw : lines(text)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty()) continue;
    auto tok = split_ws(line);
    if (tok.size() != 2) fail(ErrorCode::kFormatError, line_ref(line_no) + ": expected 'frame TYPE'");
    auto f = parse_int(tok[0]);
    if (!f || *f < 0) fail(ErrorCode::kFormatError, line_ref(line_no) + ": bad frame");
    if (!out.events.empty() && *f < out.events.back().frame)
      fail(ErrorCode::kFormatError, line_ref(line_no) + ": events not sorted");
    out.events.push_back({static_cast<Index>(*f), parse_landmark_type(tok[1])});
  }
  return out;
}

std::string write_manner_table(const MannerTable& table) {
  std::string out;
  for (const auto& [phone, manner] : table.entries()) {
    out += phone;
    out += ' ';
    out += to_string(manner);
    out += '\n';
  }
  return out;
}

MannerTable read_manner_table(std::string_view text) {
  MannerTable table;
  int line_no = 0;
  for (auto raw : lines(text)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty()) continue;
    auto tok = split_ws(line);
    if (tok.size() != 2) fail(ErrorCode::kFormatError, line_ref(line_no) + ": expected 'phone manner'");
    table.set(std::string(tok[0]), parse_manner(tok[1]));
  }
  return table;
}

FoldingTable read_folding_table(std::string_view text) {
  FoldingTable table;
  int line_no = 0;
  for (auto raw : lines(text)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty()) continue;
    auto tok = split_ws(line);
    if (tok.size() != 2) fail(ErrorCode::kFormatError, line_ref(line_no) + ": expected 'from to'");
    table[std::string(tok[0])] = std::string(tok[1]);
  }
  return table;
}

std::vector<std::string> read_phone_sequence(std::string_view text) {
  std::vector<std::string> out;
  for (auto tok : split_ws(text)) out.emplace_back(tok);
  return out;
}

std::string write_phone_sequence(const std::vector<std::string>& phones) {
  std::string out;
  for (std::size_t i = 0; i < phones.size(); ++i) {
    if (i > 0) out += ' ';
    out += phones[i];
  }
  out += '\n';
  return out;
}

std::string write_report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "utterance_id,N,ins,del,sub,per\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out += row.utterance_id + "," + std::to_string(r.n_ref) + "," + std::to_string(r.ins) +
           "," + std::to_string(r.del) + "," + std::to_string(r.sub) + "," +
           format_double(r.per()) + "\n";
  }
  return out;
}

std::vector<ReportRow> read_report_csv(std::string_view text) {
  auto ls = lines(text);
  if (ls.empty() || trim(ls[0]) != "utterance_id,N,ins,del,sub,per")
    fail(ErrorCode::kFormatError, "bad report header");
  std::vector<ReportRow> rows;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (trim(ls[i]).empty()) continue;
    auto f = split(ls[i], ',');
    if (f.size() != 6) fail(ErrorCode::kFormatError, line_ref(static_cast<int>(i + 1)) + ": expected 6 fields");
    ReportRow row;
    row.utterance_id = std::string(f[0]);
    Index* counts[] = {&row.report.n_ref, &row.report.ins, &row.report.del, &row.report.sub};
    for (int k = 0; k < 4; ++k) {
      auto v = parse_int(f[static_cast<std::size_t>(k) + 1]);
      if (!v || *v < 0) fail(ErrorCode::kFormatError, line_ref(static_cast<int>(i + 1)) + ": bad count");
      *counts[k] = static_cast<Index>(*v);
    }
    auto per = parse_double(f[5]);
    if (!per || format_double(*per) != format_double(row.report.per()))
      fail(ErrorCode::kFormatError, line_ref(static_cast<int>(i + 1)) + ": per inconsistent with counts");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string write_confusion_csv(const PERReport& report) {
  std::string out = "ref,hyp,count\n";
  for (const auto& [key, count] : report.confusion)
    out += key.first + "," + key.second + "," + std::to_string(count) + "\n";
  return out;
}

std::map<std::pair<std::string, std::string>, Index> read_confusion_csv(std::string_view text) {
  auto ls = lines(text);
  if (ls.empty() || trim(ls[0]) != "ref,hyp,count") fail(ErrorCode::kFormatError, "bad confusion header");
  std::map<std::pair<std::string, std::string>, Index> out;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (trim(ls[i]).empty()) continue;
    auto f = split(ls[i], ',');
    if (f.size() != 3) fail(ErrorCode::kFormatError, line_ref(static_cast<int>(i + 1)) + ": expected 3 fields");
    auto c = parse_int(f[2]);
    if (!c || *c < 0) fail(ErrorCode::kFormatError, line_ref(static_cast<int>(i + 1)) + ": bad count");
    out[{std::string(f[0]), std::string(f[1])}] = static_cast<Index>(*c);
  }
  return out;
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  int line_no = 0;
  for (auto raw : lines(text)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::kInvalidConfig, line_ref(line_no) + ": expected key = value");
    auto key = trim(line.substr(0, eq));
    if (key.empty()) fail(ErrorCode::kInvalidConfig, line_ref(line_no) + ": empty key");
    out.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
  }
  return out;
}

}  // namespace lmf
