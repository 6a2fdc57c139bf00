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

#include <cstring>
#include <filesystem>

#include "doctest.h"
#include "lmf/corpus.hpp"
#include "lmf/error.hpp"
#include "lmf/synth.hpp"

using namespace lmf;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kIOError;
}

}  // namespace

TEST_CASE("single frame-indexed segment") {
  auto al = parse_alignment("0 10 aa\n", {}, TimeUnit::kFrames, "u");
  REQUIRE(al.segments.size() == 1);
  CHECK(al.segments[0] == Segment{"aa", 0, 10});
  CHECK(al.frames() == 10);
}

TEST_CASE("sample-indexed alignment converts by frame shift") {
  auto al = parse_alignment("0 1600 s\n1600 3200 iy", {}, TimeUnit::kSamples);
  REQUIRE(al.segments.size() == 2);
  CHECK(al.segments[0] == Segment{"s", 0, 10});
  CHECK(al.segments[1] == Segment{"iy", 10, 20});
}

TEST_CASE("sample boundaries off the frame grid use floor") {
  auto al = parse_alignment("0 1700 s\n1700 3300 iy\n3300 3350 t", {}, TimeUnit::kSamples);
  REQUIRE(al.segments.size() == 2);  // t collapses to nothing
  CHECK(al.segments[0] == Segment{"s", 0, 10});
  CHECK(al.segments[1] == Segment{"iy", 10, 20});
}

TEST_CASE("alignment errors") {
  CHECK(code_of([] { parse_alignment("0 10 s\n9 20 iy", {}, TimeUnit::kFrames); }) ==
        ErrorCode::kMalformedAlignment);
  CHECK(code_of([] { parse_alignment("0 10 s\n11 20 iy", {}, TimeUnit::kFrames); }) ==
        ErrorCode::kMalformedAlignment);
  CHECK(code_of([] { parse_alignment("0 0 s", {}, TimeUnit::kFrames); }) == ErrorCode::kMalformedAlignment);
  CHECK(code_of([] { parse_alignment("5 10 s", {}, TimeUnit::kFrames); }) == ErrorCode::kMalformedAlignment);
  CHECK(code_of([] { parse_alignment("0 x s", {}, TimeUnit::kFrames); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_alignment("0 10", {}, TimeUnit::kFrames); }) == ErrorCode::kParseError);
}

TEST_CASE("sample to frame conversion is monotone") {
  FrameTiming timing;
  Index prev = 0;
  for (Index s = 0; s < 5000; ++s) {
    const Index f = timing.sample_to_frame(s);
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("alignment round trip") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    PhoneAlignment al;
    Index t = 0;
    const int n = 1 + static_cast<int>(rng.below(10));
    for (int i = 0; i < n; ++i) {
      const Index len = 1 + static_cast<Index>(rng.below(6));
      al.segments.push_back({"p" + std::to_string(rng.below(5)), t, t + len});
      t += len;
    }
    auto back = parse_alignment(write_alignment(al), {}, TimeUnit::kFrames);
    CHECK(back.segments == al.segments);
  }
}

TEST_CASE("binary score matrix round trip") {
  ScoreMatrix m("u", ScoreMatrix::Matrix(1, 2));
  m.values << -1.0, -2.0;
  const std::string bytes = write_score_matrix(m);
  CHECK(bytes.size() == 28);
  auto back = read_score_matrix(bytes);
  CHECK(back.values == m.values);

  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Index T = 1 + static_cast<Index>(rng.below(8)), S = 1 + static_cast<Index>(rng.below(5));
    ScoreMatrix r("r", ScoreMatrix::Matrix(T, S));
    for (Index i = 0; i < T; ++i)
      for (Index j = 0; j < S; ++j) r.values(i, j) = rng.below(7) == 0 ? kNegInf<double> : -50.0 * rng.uniform();
    const std::string b = write_score_matrix(r);
    CHECK(std::memcmp(read_score_matrix(b).values.data(), r.values.data(), sizeof(double) * T * S) == 0);
    auto text = read_score_matrix_text(write_score_matrix_text(r));
    CHECK(std::memcmp(text.values.data(), r.values.data(), sizeof(double) * T * S) == 0);
  }
}

TEST_CASE("score matrix format errors") {
  ScoreMatrix m("u", ScoreMatrix::Matrix::Zero(2, 2));
  std::string bytes = write_score_matrix(m);
  std::string bad = bytes;
  bad[3] = '2';
  CHECK(code_of([&] { read_score_matrix(bad); }) == ErrorCode::kFormatError);
  CHECK(code_of([&] { read_score_matrix(bytes.substr(0, bytes.size() - 1)); }) == ErrorCode::kFormatError);
  CHECK(code_of([&] { read_score_matrix(bytes + "x"); }) == ErrorCode::kFormatError);
  ScoreMatrix nan("u", ScoreMatrix::Matrix::Constant(1, 1, std::nan("")));
  CHECK(code_of([&] { read_score_matrix(write_score_matrix(nan)); }) == ErrorCode::kFormatError);
  ScoreMatrix pos_inf("u", ScoreMatrix::Matrix::Constant(1, 1, INFINITY));
  CHECK(code_of([&] { validate_score_matrix(pos_inf); }) == ErrorCode::kFormatError);
}

TEST_CASE("text score matrix of zeros") {
  auto m = read_score_matrix_text("2 1\n0.0\n0.0");
  CHECK(m.frames() == 2);
  CHECK(m.senones() == 1);
  CHECK(m.values.isZero(0.0));
}

TEST_CASE("mask text format") {
  FrameMask m(3);
  m.dropped(1) = true;
  CHECK(write_mask(m) == "0 0\n1 1\n2 0\n");
  CHECK(read_mask("0 0\n1 1\n2 0") == m);
  CHECK(code_of([] { write_mask(FrameMask(0)); }) == ErrorCode::kFormatError);
  CHECK(code_of([] { read_mask(""); }) == ErrorCode::kFormatError);
  CHECK(code_of([] { read_mask("0 0\n2 1"); }) == ErrorCode::kFormatError);
  CHECK(code_of([] { read_mask("0 0\n1 2"); }) == ErrorCode::kFormatError);
}

TEST_CASE("landmark file round trip") {
  LandmarkSet lms;
  lms.events = {{0, LandmarkType::kNc}, {10, LandmarkType::kMC}, {19, LandmarkType::kSr}};
  CHECK(read_landmarks(write_landmarks(lms)) == lms);
  CHECK(code_of([] { read_landmarks("3 V\n1 V"); }) == ErrorCode::kFormatError);
  CHECK(code_of([] { read_landmarks("3 Q"); }) == ErrorCode::kFormatError);
}

TEST_CASE("report and confusion round trips") {
  PERReport r;
  r.n_ref = 10;
  r.ins = 1;
  r.del = 2;
  r.sub = 3;
  r.confusion[{"aa", "<del>"}] = 2;
  r.confusion[{"aa", "iy"}] = 3;
  r.confusion[{"<ins>", "s"}] = 1;
  r.confusion[{"aa", "aa"}] = 5;
  auto rows = read_report_csv(write_report_csv({{"u1", r}}));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].utterance_id == "u1");
  CHECK(rows[0].report.n_ref == 10);
  CHECK(rows[0].report.errors() == 6);
  CHECK(read_confusion_csv(write_confusion_csv(r)) == r.confusion);
  CHECK(write_report_csv({{"u1", r}}).rfind("utterance_id,N,ins,del,sub,per\n", 0) == 0);
}

TEST_CASE("manner table and folding files") {
  auto t = read_manner_table("# comment\naa vowel\nh# silence\ns fricative  # trailing\n");
  CHECK(t.size() == 3);
  CHECK(t.at("h#") == Manner::kSilence);
  CHECK(read_manner_table(write_manner_table(MannerTable::timit())).entries() == MannerTable::timit().entries());
  CHECK(MannerTable::timit().size() == 61);
  CHECK(code_of([] { MannerTable::timit().at("zz"); }) == ErrorCode::kUnknownPhone);
  auto fold = read_folding_table("ao aa\nix ih\n");
  CHECK(fold.at("ao") == "aa");
}

TEST_CASE("key value configs") {
  auto kv = parse_key_values("# c\na = 1\nb=two words # note\n\n");
  REQUIRE(kv.size() == 2);
  CHECK(kv[1].key == "b");
  CHECK(kv[1].value == "two words");
  CHECK(kv[1].line == 3);
  CHECK(code_of([] { parse_key_values("novalue\n"); }) == ErrorCode::kInvalidConfig);
}

TEST_CASE("corpus directory round trip") {
  SynthConfig cfg;
  cfg.n_utterances = 6;
  cfg.utterance_length = 5;
  Corpus c = gen_corpus(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "lmf_test_corpus";
  std::filesystem::remove_all(dir);
  write_corpus(c, dir);
  Corpus back = load_corpus(dir);
  REQUIRE(back.alignments.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(back.alignments[i].segments == c.alignments[i].segments);
    CHECK(back.alignments[i].speaker_id == c.alignments[i].speaker_id);
    CHECK(back.alignments[i].gender == c.alignments[i].gender);
    CHECK(back.scores[i].values == c.scores[i].values);
  }
  CHECK(back.model.trans == c.model.trans);
  CHECK(back.manners.entries() == c.manners.entries());
  std::filesystem::remove_all(dir);
}
