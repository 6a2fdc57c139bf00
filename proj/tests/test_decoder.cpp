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

#include "doctest.h"
#include "lmf/decoder.hpp"
#include "lmf/error.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace lmf;
using lmf::testing::Instance;
using lmf::testing::random_instance;

namespace {

TransitionModel uniform_model(Index S) {
  TransitionModel tm;
  tm.init = TransitionModel::Vector::Constant(S, -std::log(static_cast<double>(S)));
  tm.trans = TransitionModel::Matrix::Constant(S, S, -std::log(static_cast<double>(S)));
  for (Index s = 0; s < S; ++s) tm.senone_to_phone.push_back("p" + std::to_string(s));
  return tm;
}

}  // namespace

TEST_CASE("viterbi equals exhaustive path search") {
  Rng rng(31337);
  for (int trial = 0; trial < 600; ++trial) {
    const Instance in = random_instance(rng, trial % 2 == 0, trial % 3 == 0);
    const oracle::BestPath best = oracle::best_path_by_enumeration(in.raw);
    REQUIRE(best.score > -oracle::kInf);
    const DecodeResult d = viterbi(in.scores, in.tm, in.raw.weights.empty() ? nullptr : &in.weights);
    std::vector<int> states(d.states.begin(), d.states.end());
    CHECK(d.score == doctest::Approx(best.score).epsilon(1e-12));
    CHECK(states == best.states);
    CHECK(path_score(in.scores, in.tm, d.states, in.raw.weights.empty() ? nullptr : &in.weights) == d.score);
  }
}

TEST_CASE("small worked example") {
  ScoreMatrix m("u", ScoreMatrix::Matrix(3, 2));
  m.values << -1, -2, -3, -0.5, -1, -1;
  TransitionModel tm;
  tm.init = TransitionModel::Vector(2);
  tm.init << std::log(0.6), std::log(0.4);
  tm.trans = TransitionModel::Matrix(2, 2);
  tm.trans << std::log(0.7), std::log(0.3), std::log(0.4), std::log(0.6);
  tm.senone_to_phone = {"a", "b"};
  tm.validate();
  // Hand enumeration: the best of the 8 paths is 0,1,1.
  const DecodeResult d = viterbi(m, tm);
  CHECK(d.states == std::vector<Index>{0, 1, 1});
  CHECK(d.phones == std::vector<std::string>{"a", "b"});
  CHECK(d.score == doctest::Approx(std::log(0.6) - 1 + std::log(0.3) - 0.5 + std::log(0.6) - 1));
}

TEST_CASE("single frame and uniform models") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Index S = 1 + static_cast<Index>(rng.below(6)), T = 1 + static_cast<Index>(rng.below(10));
    ScoreMatrix m("u", ScoreMatrix::Matrix(T, S));
    for (Index t = 0; t < T; ++t)
      for (Index s = 0; s < S; ++s) m.values(t, s) = -10 * rng.uniform();
    const DecodeResult d = viterbi(m, uniform_model(S));
    for (Index t = 0; t < T; ++t) {
      Index arg = 0;
      m.values.row(t).maxCoeff(&arg);
      CHECK(d.states[static_cast<std::size_t>(t)] == arg);
    }
  }
}

TEST_CASE("ties go to the lowest senone") {
  ScoreMatrix m("u", ScoreMatrix::Matrix::Zero(3, 3));
  const DecodeResult d = viterbi(m, uniform_model(3));
  CHECK(d.states == std::vector<Index>{0, 0, 0});
}

TEST_CASE("weights scale emissions only") {
  ScoreMatrix m("u", ScoreMatrix::Matrix(2, 2));
  m.values << -1, -3, -2, -1.5;
  WeightVector w(2);
  w << 1.0, 4.0;
  const TransitionModel tm = uniform_model(2);
  const double expected = tm.init(0) + -1 + tm.trans(0, 1) + 4.0 * -1.5;
  const DecodeResult d = viterbi(m, tm, &w);
  CHECK(d.states == std::vector<Index>{0, 1});
  CHECK(d.score == doctest::Approx(expected));
  const WeightVector ones = WeightVector::Ones(2);
  const DecodeResult a = viterbi(m, tm, &ones), b = viterbi(m, tm);
  CHECK(a == b);
}

TEST_CASE("beam pruning") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance in = random_instance(rng, false, false);
    const DecodeResult exact = viterbi(in.scores, in.tm);
    // A wide beam changes nothing.
    CHECK(viterbi(in.scores, in.tm, static_cast<const WeightVector*>(nullptr), 1e6) == exact);
    // A narrow beam never beats the exact search.
    try {
      const DecodeResult narrow = viterbi(in.scores, in.tm, static_cast<const WeightVector*>(nullptr), 0.5);
      CHECK(narrow.score <= exact.score);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kBeamCollapse);
    }
  }
  // Every path blocked by forbidden transitions.
  ScoreMatrix m("u", ScoreMatrix::Matrix::Zero(2, 2));
  TransitionModel tm = uniform_model(2);
  tm.trans.setConstant(kNegInf<double>);
  try {
    viterbi(m, tm);
    FAIL("expected BeamCollapse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBeamCollapse);
  }
}

TEST_CASE("shape errors") {
  ScoreMatrix m("u", ScoreMatrix::Matrix::Zero(2, 3));
  try {
    viterbi(m, uniform_model(2));
    FAIL("expected ShapeError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kShapeError);
  }
  WeightVector w = WeightVector::Ones(3);
  CHECK_THROWS_AS(viterbi(m, uniform_model(3), &w), Error);
}

TEST_CASE("collapse") {
  const std::vector<std::string> map{"a", "b", "h#"};
  CHECK(collapse_states({0, 0, 1, 1, 1}, map) == std::vector<std::string>{"a", "b"});
  CHECK(collapse_states({1, 1}, map) == std::vector<std::string>{"b"});
  CHECK(collapse_states({0, 1, 0}, map) == std::vector<std::string>{"a", "b", "a"});
  CHECK(collapse_states({2, 0, 2, 0}, map) == std::vector<std::string>{"a", "a"});
  CollapseOptions keep;
  keep.drop_silence = false;
  CHECK(collapse_states({2, 0}, map, keep) == std::vector<std::string>{"h#", "a"});
  CollapseOptions fold;
  fold.folding = {{"b", "a"}};
  CHECK(collapse_states({0, 1, 0}, map, fold) == std::vector<std::string>{"a"});
  CHECK_THROWS_AS(collapse_states({3}, map), Error);
  CHECK_THROWS_AS(collapse_states({}, map), Error);

  PhoneAlignment al;
  al.segments = {{"h#", 0, 3}, {"s", 3, 6}, {"s", 6, 8}, {"iy", 8, 10}};
  CHECK(reference_phones(al) == std::vector<std::string>{"s", "iy"});
}

TEST_CASE("transition model text round trip and validation") {
  Rng rng(2);
  const Instance in = random_instance(rng, false, false);
  TransitionModel tm = uniform_model(3);
  tm.trans(0, 1) = kNegInf<double>;
  tm.trans(0, 0) = std::log(2.0 / 3.0);
  tm.validate();
  const TransitionModel back = read_transition_model(write_transition_model(tm));
  CHECK(std::memcmp(back.trans.data(), tm.trans.data(), sizeof(double) * 9) == 0);
  CHECK(back.senone_to_phone == tm.senone_to_phone);
  tm.trans(1, 1) = 0.0;
  CHECK_THROWS_AS(tm.validate(), Error);
  (void)in;
}
