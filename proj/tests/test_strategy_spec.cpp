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

#include "doctest.h"
#include "lmf/error.hpp"
#include "lmf/strategy_spec.hpp"

using namespace lmf;

namespace {

StrategyContext context(Index T, FrameSet lm, std::uint64_t seed = 1) {
  StrategyContext ctx;
  ctx.frames = T;
  ctx.seed = seed;
  ctx.landmarks = [lm, T](Index r) {
    FrameSet out;
    for (Index t = 0; t < T; ++t)
      for (Index f : lm)
        if (t >= f - r && t <= f + r) {
          out.push_back(t);
          break;
        }
    return out;
  };
  return ctx;
}

bool is_config_error(std::string_view text) {
  try {
    StrategySpec::parse(text);
  } catch (const Error& e) {
    return e.code() == ErrorCode::kInvalidConfig;
  }
  return false;
}

}  // namespace

TEST_CASE("parse and print") {
  CHECK(StrategySpec::parse("regular:P=3,D=1").to_string() == "regular:P=3,D=1|copy");
  CHECK(StrategySpec::parse("identity").to_string() == "identity|copy");
  CHECK(StrategySpec::parse("landmark:keep,r=0|fill_0").replacement == Replacement::kFill0);
  auto h = StrategySpec::parse("hybrid:P=3,D=2,overweight=4.0");
  REQUIRE(h.terms.size() == 1);
  CHECK(h.terms[0].kind == StrategyTerm::Kind::kHybrid);
  CHECK(h.terms[0].overweight == 4.0);
  auto combo = StrategySpec::parse("regular:P=2,D=1 + landmark:drop");
  CHECK(combo.terms.size() == 2);
  for (std::string_view s : {"random:n=120,seed=7", "random:rate=0.5,seed=7|fill_const",
                             "random:match=lk,seed=2", "weight:factor=1.5,r=1", "regular:P=2,D=1|upsample",
                             "hybrid:P=3,D=2,overweight=4,rate=0.542,seed=3"}) {
    auto spec = StrategySpec::parse(s);
    CHECK(StrategySpec::parse(spec.to_string()).to_string() == spec.to_string());
  }
  CHECK(StrategySpec::parse("random:match=lk").dependencies() == std::vector<std::string>{"lk"});
  CHECK(StrategySpec::parse("random:n=3").stochastic());
  CHECK(!StrategySpec::parse("landmark:keep").stochastic());
}

TEST_CASE("bad specs") {
  CHECK(is_config_error(""));
  CHECK(is_config_error("regular:D=1"));
  CHECK(is_config_error("regular:P=3,D=3"));
  CHECK(is_config_error("random"));
  CHECK(is_config_error("landmark:sideways"));
  CHECK(is_config_error("wobble:x=1"));
  CHECK(is_config_error("regular:P=2,D=1|zero"));
  CHECK(is_config_error("weight:factor=-1"));
  CHECK(is_config_error("random:rate=1.5"));
}

TEST_CASE("realize drop patterns") {
  const auto reg = realize(StrategySpec::parse("regular:P=2,D=1"), context(10, {}));
  CHECK(reg.mask.dropped_frames() == FrameSet{0, 2, 4, 6, 8});
  CHECK(reg.weights == WeightVector::Ones(10));

  const auto keep = realize(StrategySpec::parse("landmark:keep"), context(6, {4}));
  CHECK(keep.mask.dropped_frames() == FrameSet{0, 1, 2, 3, 5});
  const auto wide = realize(StrategySpec::parse("landmark:keep,r=1"), context(6, {4}));
  CHECK(wide.mask.dropped_frames() == FrameSet{0, 1, 2});

  const auto rnd = realize(StrategySpec::parse("random:rate=0.5,seed=3"), context(9, {}));
  CHECK(rnd.mask.drop_count() == 5);  // llround(4.5)

  const auto orr = realize(StrategySpec::parse("regular:P=3,D=1+landmark:drop"), context(9, {4}));
  CHECK(orr.mask.dropped_frames() == FrameSet{0, 3, 4, 6});
}

TEST_CASE("random matched to another strategy") {
  auto ctx = context(20, {3, 9});
  ctx.matched_count = [](const std::string& name) -> Index { return name == "lk" ? 7 : 0; };
  const auto m = realize(StrategySpec::parse("random:match=lk,seed=4"), ctx);
  CHECK(m.mask.drop_count() == 7);
  auto no_match = context(20, {});
  CHECK_THROWS_AS(realize(StrategySpec::parse("random:match=lk"), no_match), Error);
}

TEST_CASE("hybrid and weights") {
  const auto h = realize(StrategySpec::parse("hybrid:P=3,D=2,overweight=4.0"), context(9, {1, 5}));
  CHECK(h.mask.dropped_frames() == FrameSet{0, 3, 4, 6, 7});
  CHECK(h.weights(1) == 4.0);
  CHECK(h.weights(5) == 4.0);
  CHECK(h.weights(2) == 1.0);

  const auto hr = realize(StrategySpec::parse("hybrid:P=3,D=2,overweight=4.0,rate=0.5,seed=1"), context(30, {1, 5}));
  CHECK(hr.mask.drop_count() == 15);
  CHECK(!hr.mask.dropped(1));
  CHECK(!hr.mask.dropped(5));

  const auto w = realize(StrategySpec::parse("weight:factor=1.5"), context(5, {2}));
  CHECK(w.mask.drop_count() == 0);
  CHECK(w.weights(2) == 1.5);
}

TEST_CASE("upsample gets a filter of the regular period") {
  const auto u = realize(StrategySpec::parse("regular:P=3,D=1|upsample"), context(12, {}));
  REQUIRE(u.filter);
  CHECK(u.filter->period == 3);
  ScoreMatrix flat("u", ScoreMatrix::Matrix::Constant(12, 2, -3.0));
  const auto out = transform_scores(flat, u, Replacement::kUpsample);
  CHECK((out.values.array() + 3.0).abs().maxCoeff() < 1e-9);
}

TEST_CASE("realization is deterministic in the context seed") {
  const auto spec = StrategySpec::parse("random:n=10,seed=2");
  CHECK(realize(spec, context(40, {}, 5)).mask == realize(spec, context(40, {}, 5)).mask);
  CHECK(!(realize(spec, context(40, {}, 5)).mask == realize(spec, context(40, {}, 6)).mask));
}

TEST_CASE("sweep hooks") {
  auto h = StrategySpec::parse("hybrid:P=3,D=2,overweight=4.0");
  h.set_overweight(1.5);
  CHECK(h.terms[0].overweight == 1.5);
  h.set_drop_rate(0.54);
  CHECK(h.terms[0].rate.value() == 0.54);
  auto r = StrategySpec::parse("regular:P=2,D=1");
  CHECK_THROWS_AS(r.set_overweight(2.0), Error);
  CHECK_THROWS_AS(r.set_drop_rate(0.3), Error);
}
