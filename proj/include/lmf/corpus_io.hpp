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

#ifndef LMF_CORPUS_IO_HPP_
#define LMF_CORPUS_IO_HPP_

// Readers and writers for every on-disk artifact. All functions are pure:
// text/bytes in, values out (or the reverse).

#include <string>
#include <string_view>
#include <vector>

#include "lmf/types.hpp"

namespace lmf {

enum class TimeUnit { kFrames, kSamples };

// Alignment files: one "start end phone" line per segment (TIMIT .PHN
// layout). Sample-indexed input is converted to frames with
// floor(b / frame_shift); segments that collapse to zero frames are dropped.
PhoneAlignment parse_alignment(std::string_view text, const FrameTiming& timing,
                               TimeUnit unit, std::string utterance_id = {});
std::string write_alignment(const PhoneAlignment& alignment);

// Score matrices. Binary layout: "LLM1", u32 T, u32 S, then T*S float64,
// frame-major, all little-endian. Text layout: "T S" header, then T lines of
// S numbers; NEG_INF is written "-inf".
inline constexpr std::string_view kScoreMagic = "LLM1";

ScoreMatrix read_score_matrix(std::string_view bytes, std::string utterance_id = {});
std::string write_score_matrix(const ScoreMatrix& m);
ScoreMatrix read_score_matrix_text(std::string_view text, std::string utterance_id = {});
std::string write_score_matrix_text(const ScoreMatrix& m);
/// T, S >= 1 and every value finite or exactly NEG_INF.
void validate_score_matrix(const ScoreMatrix& m);

// Masks: "t 0|1" per frame, t = 0..T-1 in order.
std::string write_mask(const FrameMask& mask);
FrameMask read_mask(std::string_view text);

// Landmarks: "frame TYPE" per event.
std::string write_landmarks(const LandmarkSet& lms);
LandmarkSet read_landmarks(std::string_view text, std::string utterance_id = {});

// Manner tables: "phone manner" per line; '#' starts a comment.
std::string write_manner_table(const MannerTable& table);
MannerTable read_manner_table(std::string_view text);

// Phone-folding tables (e.g. 61 -> 39): "from to" per line.
using FoldingTable = std::map<std::string, std::string, std::less<>>;
FoldingTable read_folding_table(std::string_view text);

// Phone sequences: whitespace-separated labels.
std::vector<std::string> read_phone_sequence(std::string_view text);
std::string write_phone_sequence(const std::vector<std::string>& phones);

// Reports. Per-utterance CSV: utterance_id,N,ins,del,sub,per. Confusion CSV:
// ref,hyp,count.
struct ReportRow {
  std::string utterance_id;
  PERReport report;
};

std::string write_report_csv(const std::vector<ReportRow>& rows);
/// Confusion maps are not part of the per-utterance CSV; they come back empty.
std::vector<ReportRow> read_report_csv(std::string_view text);
std::string write_confusion_csv(const PERReport& report);
std::map<std::pair<std::string, std::string>, Index> read_confusion_csv(
    std::string_view text);

/// key = value lines, '#' comments. Repeated keys are kept in file order.
struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};
std::vector<KeyValue> parse_key_values(std::string_view text);

}  // namespace lmf

#endif  // LMF_CORPUS_IO_HPP_
