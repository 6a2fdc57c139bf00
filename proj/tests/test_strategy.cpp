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
#include "lmf/error.hpp"
#include "lmf/strategy.hpp"

using namespace lmf;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIOError;
}

bool same_bits(const auto& a, const auto& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

ScoreMatrix random_scores(Rng& rng, Index T, Index S) {
  ScoreMatrix m("r", ScoreMatrix::Matrix(T, S));
  for (Index t = 0; t < T; ++t)
    for (Index s = 0; s < S; ++s) m.values(t, s) = -40.0 * rng.uniform();
  return m;
}

FrameMask random_mask(Rng& rng, Index T) {
  FrameMask m(T);
  for (Index t = 0; t < T; ++t) m.dropped(t) = rng.below(2) == 1;
  return m;
}

}  // namespace

TEST_CASE("regular masks") {
  CHECK(mask_regular(6, 2, 1).dropped_frames() == FrameSet{0, 2, 4});
  CHECK(mask_regular(6, 2, 1).drop_rate() == 0.5);
  CHECK(mask_regular(9, 3, 1).dropped_frames() == FrameSet{0, 3, 6});
  CHECK(mask_regular(9, 3, 2).dropped_frames() == FrameSet{0, 1, 3, 4, 6, 7});
  CHECK(mask_regular(9, 3, 2).drop_rate() == doctest::Approx(2.0 / 3.0));
  CHECK(code_of([] { mask_regular(9, 3, 3); }) == ErrorCode::kInvalidPattern);
  CHECK(code_of([] { mask_regular(9, 1, 0); }) == ErrorCode::kInvalidPattern);
  for (Index T = 1; T < 40; ++T)
    for (Index P = 2; P < 6; ++P)
      CHECK(mask_regular(T, P, 1).drop_count() == (T + P - 1) / P);
  CHECK(is_regular(mask_regular(10, 3, 1), 3, 1));
  CHECK(!is_regular(mask_regular(10, 3, 2), 3, 1));
}

TEST_CASE("random masks") {
  CHECK(mask_random(10, 0, 1).drop_count() == 0);
  CHECK(mask_random(10, 10, 1) == FrameMask::drop_all(10));
  CHECK(mask_random(50, 20, 9, {1, 2, 3}) == mask_random(50, 20, 9, {1, 2, 3}));
  CHECK(!(mask_random(50, 20, 9) == mask_random(50, 20, 10)));
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const Index T = 1 + static_cast<Index>(rng.below(60));
    FrameSet prot;
    for (Index t = 0; t < T; ++t)
      if (rng.below(4) == 0) prot.push_back(t);
    const Index n = static_cast<Index>(rng.below(static_cast<std::uint64_t>(T - static_cast<Index>(prot.size())) + 1));
    const FrameMask m = mask_random(T, n, rng.next(), prot);
    CHECK(m.drop_count() == n);
    for (Index p : prot) CHECK(!m.dropped(p));
  }
  CHECK(code_of([] { mask_random(5, 5, 1, {0}); }) == ErrorCode::kInvalidPattern);
}

TEST_CASE("landmark masks and combinations") {
  CHECK(mask_landmark({4}, 6, LandmarkRegime::kKeep).dropped_frames() == FrameSet{0, 1, 2, 3, 5});
  CHECK(mask_landmark({4}, 6, LandmarkRegime::kDrop).dropped_frames() == FrameSet{4});
  std::vector<std::string> warnings;
  auto old = set_warning_handler([&](std::string_view m) { warnings.emplace_back(m); });
  CHECK(mask_landmark({}, 6, LandmarkRegime::kKeep) == FrameMask::drop_all(6));
  set_warning_handler(old);
  CHECK(warnings.size() == 1);

  FrameMask a(3), b(3);
  a.dropped(0) = true;
  b.dropped(1) = true;
  CHECK(mask_or(a, b).dropped_frames() == FrameSet{0, 1});
  CHECK(mask_or(a, FrameMask::keep_all(3)) == a);
  CHECK(mask_subtract(mask_regular(6, 2, 1), {2}).dropped_frames() == FrameSet{0, 4});
  CHECK(code_of([&] { mask_or(a, FrameMask(4)); }) == ErrorCode::kShapeError);
}

TEST_CASE("adjust mask to rate") {
  const FrameMask base = mask_regular(20, 2, 1);
  const FrameMask up = adjust_mask_to_rate(base, 12, {}, 3);
  CHECK(up.drop_count() == 12);
  for (Index t : base.dropped_frames()) CHECK(up.dropped(t));
  CHECK(adjust_mask_to_rate(base, 10, {}, 3) == base);
  const FrameMask down = adjust_mask_to_rate(base, 6, {}, 3);
  CHECK(down.drop_count() == 6);
  for (Index t : down.dropped_frames()) CHECK(base.dropped(t));
  FrameSet prot;
  for (Index t = 1; t < 20; t += 2) prot.push_back(t);
  CHECK(code_of([&] { adjust_mask_to_rate(base, 11, prot, 3); }) == ErrorCode::kInvalidPattern);
  // Protected frames already dropped cannot be restored either.
  CHECK(code_of([&] { adjust_mask_to_rate(base, 0, {0}, 3); }) == ErrorCode::kInvalidPattern);
  CHECK(adjust_mask_to_rate(base, 14, {0, 1}, 5) == adjust_mask_to_rate(base, 14, {0, 1}, 5));
}

TEST_CASE("hybrid mask keeps landmarks and lowers the rate") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Index T = 3 + static_cast<Index>(rng.below(60));
    FrameSet lm;
    for (Index t = 0; t < T; ++t)
      if (rng.below(5) == 0) lm.push_back(t);
    const FrameMask reg = mask_regular(T, 3, 2);
    const FrameMask hyb = mask_subtract(reg, lm);
    bool overlap = false;
    for (Index t : lm) {
      CHECK(!hyb.dropped(t));
      overlap |= reg.dropped(t);
    }
    if (overlap) CHECK(hyb.drop_count() < reg.drop_count());
    else CHECK(hyb.drop_count() == reg.drop_count());
  }
}

TEST_CASE("replacement examples") {
  ScoreMatrix row("u", ScoreMatrix::Matrix(1, 2));
  row.values << -1.5, -2.5;
  auto z = apply_replacement(row, FrameMask::drop_all(1), Replacement::kFill0);
  CHECK(z.values(0, 0) == 0.0);
  CHECK(z.values(0, 1) == 0.0);

  ScoreMatrix abc("u", ScoreMatrix::Matrix(3, 1));
  abc.values << -1, -2, -3;
  FrameMask mid(3);
  mid.dropped(1) = true;
  auto c = apply_replacement(abc, mid, Replacement::kCopy);
  CHECK(c.values(0, 0) == -1);
  CHECK(c.values(1, 0) == -1);
  CHECK(c.values(2, 0) == -3);

  ScoreMatrix two("u", ScoreMatrix::Matrix(2, 1));
  two.values << -1, -3;
  FrameMask last(2);
  last.dropped(1) = true;
  auto fc = apply_replacement(two, last, Replacement::kFillConst);
  CHECK(fc.values(0, 0) == -1);
  CHECK(fc.values(1, 0) == -2);

  // Leading drop under copy falls back to the temporal mean.
  FrameMask first(2);
  first.dropped(0) = true;
  CHECK(apply_replacement(two, first, Replacement::kCopy).values(0, 0) == -2);

  ScoreMatrix flat("u", ScoreMatrix::Matrix::Constant(25, 3, -2.0));
  const InterpFilter f2 = design_interp_filter(2);
  auto up = apply_replacement(flat, mask_regular(25, 2, 1), Replacement::kUpsample, &f2);
  CHECK((up.values.array() + 2.0).abs().maxCoeff() < 1e-9);
  CHECK(code_of([&] { apply_replacement(flat, mask_regular(25, 3, 2), Replacement::kUpsample, &f2); }) ==
        ErrorCode::kInvalidPattern);
  CHECK(code_of([&] { apply_replacement(flat, FrameMask(24), Replacement::kCopy); }) == ErrorCode::kShapeError);
}

TEST_CASE("interpolation filters") {
  for (Index P = 2; P <= 8; ++P) {
    const InterpFilter f = design_interp_filter(P);
    CHECK(f.taps.size() == 17);
    for (Index k = 1; k <= 8; ++k) CHECK(f(k) == f(-k));
    CHECK(f(0) == 1.0);
    double other = 0;
    for (Index k = -8; k <= 8; ++k) {
      if (k % P == 0 && k != 0) CHECK(f(k) == 0.0);
      if (k % P != 0) other += f(k);
    }
    CHECK(other == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(code_of([] { design_interp_filter(1); }) == ErrorCode::kInvalidPattern);
  CHECK(code_of([] { design_interp_filter(9); }) == ErrorCode::kInvalidPattern);
}

TEST_CASE("kept rows are untouched by every method") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const Index T = 1 + static_cast<Index>(rng.below(30)), S = 1 + static_cast<Index>(rng.below(5));
    const ScoreMatrix m = random_scores(rng, T, S);
    const FrameMask mask = random_mask(rng, T);
    for (Replacement r : {Replacement::kCopy, Replacement::kFill0, Replacement::kFillConst}) {
      const ScoreMatrix out = apply_replacement(m, mask, r);
      for (Index t = 0; t < T; ++t)
        if (!mask.dropped(t)) CHECK(same_bits(out.values.row(t).eval(), m.values.row(t).eval()));
    }
    const Index P = 2 + static_cast<Index>(rng.below(7));
    const InterpFilter f = design_interp_filter(P);
    const FrameMask reg = mask_regular(T, P, 1);
    const ScoreMatrix up = apply_replacement(m, reg, Replacement::kUpsample, &f);
    for (Index t = 0; t < T; ++t)
      if (!reg.dropped(t)) CHECK(same_bits(up.values.row(t).eval(), m.values.row(t).eval()));
  }
}

TEST_CASE("weights") {
  Rng rng(5);
  ScoreMatrix m = random_scores(rng, 6, 3);
  m.values(2, 1) = kNegInf<double>;
  const auto same = apply_weights(m, WeightVector(WeightVector::Ones(6)));
  CHECK(same_bits(same.values, m.values));
  WeightVector w = WeightVector::Ones(6);
  w(2) = 1.5;
  w(4) = 4.0;
  const auto out = apply_weights(m, w);
  CHECK(out.values(4, 0) == 4.0 * m.values(4, 0));
  CHECK(out.values(2, 0) == 1.5 * m.values(2, 0));
  CHECK(is_neg_inf(out.values(2, 1)));
  CHECK(same_bits(out.values.row(3).eval(), m.values.row(3).eval()));
  CHECK(code_of([&] { apply_weights(m, WeightVector(WeightVector::Ones(5))); }) == ErrorCode::kShapeError);
  WeightVector neg = WeightVector::Ones(6);
  neg(0) = -1;
  CHECK(code_of([&] { apply_weights(m, neg); }) == ErrorCode::kInvalidPattern);

  const WeightVector lw = landmark_weights(6, {1, 4}, 2.0);
  CHECK(lw(1) == 2.0);
  CHECK(lw(0) == 1.0);
}

TEST_CASE("weighting and masking commute on kept frames") {
  Rng rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const Index T = 1 + static_cast<Index>(rng.below(20)), S = 1 + static_cast<Index>(rng.below(4));
    const ScoreMatrix m = random_scores(rng, T, S);
    const FrameMask mask = random_mask(rng, T);
    WeightVector w(T);
    for (Index t = 0; t < T; ++t) w(t) = 4.0 * rng.uniform();
    for (Replacement r : {Replacement::kCopy, Replacement::kFill0, Replacement::kFillConst}) {
      const auto a = apply_replacement(apply_weights(m, w), mask, r);
      const auto b = apply_weights(apply_replacement(m, mask, r), w);
      for (Index t = 0; t < T; ++t)
        if (!mask.dropped(t)) CHECK(same_bits(a.values.row(t).eval(), b.values.row(t).eval()));
    }
  }
}

TEST_CASE("replacement names") {
  CHECK(parse_replacement("fill_0") == Replacement::kFill0);
  CHECK(to_string(Replacement::kUpsample) == "upsample");
  CHECK(code_of([] { parse_replacement("zero"); }) == ErrorCode::kInvalidConfig);
}
