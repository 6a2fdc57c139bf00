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

#ifndef LMF_STRATEGY_HPP_
#define LMF_STRATEGY_HPP_

// Frame-drop patterns g(t), replacement rules R, and emission weights w(t).
// Everything here is a pure function of its inputs; matrices come back as new
// values.

#include <algorithm>
#include <array>
#include <cstdint>

#include "lmf/error.hpp"
#include "lmf/types.hpp"

namespace lmf {

// -- Patterns ---------------------------------------------------------------

/// Drops frames with (t mod period) < drop_count. drop_count == 1 is the
/// classic "every period-th frame, starting at frame 0".
FrameMask mask_regular(Index frames, Index period, Index drop_count);

/// Exactly n_drop dropped frames, uniformly without replacement from the
/// frames not in `protected_frames`.
FrameMask mask_random(Index frames, Index n_drop, std::uint64_t seed,
                      const FrameSet& protected_frames = {});

enum class LandmarkRegime { kKeep, kDrop };

/// kKeep drops every non-landmark frame; kDrop drops exactly the landmarks.
FrameMask mask_landmark(const FrameSet& landmark_frames, Index frames,
                        LandmarkRegime regime);

FrameMask mask_or(const FrameMask& a, const FrameMask& b);
/// Clears the drop flag on every protected frame.
FrameMask mask_subtract(const FrameMask& a, const FrameSet& protected_frames);

/// Randomly drops (or restores) unprotected frames until exactly target_n
/// frames are dropped. Throws InvalidPattern when that is impossible.
FrameMask adjust_mask_to_rate(const FrameMask& mask, Index target_n,
                              const FrameSet& protected_frames, std::uint64_t seed);

bool is_regular(const FrameMask& mask, Index period, Index drop_count);

/// Indicator vector of a frame set; frames outside [0, frames) are ignored.
Eigen::Array<bool, Eigen::Dynamic, 1> frame_indicator(const FrameSet& set, Index frames);

// -- Interpolation filter ---------------------------------------------------

/// 17-tap symmetric low-pass interpolator for a Regular(period, 1) pattern.
/// taps[k + 8] holds h(k). h(0) == 1 and h(m * period) == 0 for m != 0, so
/// kept samples reproduce themselves; the remaining taps are scaled to sum to
/// one, giving unit DC gain when a dropped frame is rebuilt from its kept
/// neighbours.
struct InterpFilter {
  static constexpr Index kHalfWidth = 8;
  static constexpr Index kTaps = 2 * kHalfWidth + 1;

  Index period = 2;
  std::array<double, kTaps> taps{};

  double operator()(Index k) const {
    return (k < -kHalfWidth || k > kHalfWidth) ? 0.0 : taps[static_cast<std::size_t>(k + kHalfWidth)];
  }
};

/// Hamming-windowed sinc with cutoff pi / period. period must be in [2, 8].
InterpFilter design_interp_filter(Index period);

// -- Replacement and weighting ----------------------------------------------

enum class Replacement { kCopy, kFill0, kFillConst, kUpsample };

std::string_view to_string(Replacement r);
Replacement parse_replacement(std::string_view s);

/// Per-senone arithmetic mean of the log scores over all frames.
template <typename Scalar>
Eigen::Matrix<Scalar, 1, Eigen::Dynamic> temporal_mean(const BasicScoreMatrix<Scalar>& scores) {
  return scores.values.colwise().mean();
}

/// Rebuilds dropped rows of `scores`; kept rows are copied bit-exact.
///
///   kCopy       row of the most recent kept frame; dropped frames with no
///               kept predecessor get the kFillConst row
///   kFill0      all-zero log row (likelihood 1)
///   kFillConst  temporal_mean(scores), computed over every input frame
///   kUpsample   sum over kept t' of h(t - t') * x(t'), renormalised by the
///               taps actually used; requires a Regular(filter->period, 1)
///               mask. A NEG_INF contributor makes the result NEG_INF.
template <typename Scalar>
BasicScoreMatrix<Scalar> apply_replacement(const BasicScoreMatrix<Scalar>& scores,
                                           const FrameMask& mask, Replacement method,
                                           const InterpFilter* filter = nullptr) {
  const Index frames = scores.frames();
  const Index senones = scores.senones();
  if (mask.frames() != frames) {
    fail(ErrorCode::kShapeError, "mask has " + std::to_string(mask.frames()) +
                                     " frames, scores have " + std::to_string(frames));
  }
  if (method == Replacement::kUpsample) {
    if (filter == nullptr) fail(ErrorCode::kInvalidPattern, "upsample needs an interpolation filter");
    if (!is_regular(mask, filter->period, 1))
      fail(ErrorCode::kInvalidPattern, "upsample needs a Regular(P, 1) mask matching the filter");
  }

  BasicScoreMatrix<Scalar> out = scores;
  if (mask.drop_count() == 0) return out;

  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> mean;
  auto fill_const_row = [&]() -> const Eigen::Matrix<Scalar, 1, Eigen::Dynamic>& {
    if (mean.size() == 0) mean = temporal_mean(scores);
    return mean;
  };

  Index last_kept = -1;
  for (Index t = 0; t < frames; ++t) {
    if (!mask.dropped(t)) {
      last_kept = t;
      continue;
    }
    switch (method) {
      case Replacement::kFill0:
        out.values.row(t).setZero();
        break;
      case Replacement::kFillConst:
        out.values.row(t) = fill_const_row();
        break;
      case Replacement::kCopy:
        if (last_kept >= 0) {
          out.values.row(t) = scores.values.row(last_kept);
        } else {
          out.values.row(t) = fill_const_row();
        }
        break;
      case Replacement::kUpsample: {
        const Index lo = std::max<Index>(0, t - InterpFilter::kHalfWidth);
        const Index hi = std::min<Index>(frames - 1, t + InterpFilter::kHalfWidth);
        Scalar norm = 0;
        for (Index u = lo; u <= hi; ++u)
          if (!mask.dropped(u)) norm += static_cast<Scalar>((*filter)(t - u));
        if (norm == Scalar(0)) {
          out.values.row(t) = fill_const_row();
          break;
        }
        for (Index s = 0; s < senones; ++s) {
          Scalar acc = 0;
          bool absorbed = false;
          for (Index u = lo; u <= hi && !absorbed; ++u) {
            if (mask.dropped(u)) continue;
            const auto h = static_cast<Scalar>((*filter)(t - u));
            if (h == Scalar(0)) continue;
            const Scalar x = scores.values(u, s);
            if (is_neg_inf(x)) {
              absorbed = true;
            } else {
              acc += h * x;
            }
          }
          out.values(t, s) = absorbed ? kNegInf<Scalar> : acc / norm;
        }
        break;
      }
    }
  }
  return out;
}

/// out(t, s) = w(t) * in(t, s). NEG_INF entries stay NEG_INF for any weight.
template <typename Scalar>
BasicScoreMatrix<Scalar> apply_weights(const BasicScoreMatrix<Scalar>& scores,
                                       const BasicWeightVector<Scalar>& weights) {
  if (weights.size() != scores.frames()) {
    fail(ErrorCode::kShapeError, "weight vector has " + std::to_string(weights.size()) +
                                     " frames, scores have " + std::to_string(scores.frames()));
  }
  if ((weights.array() < Scalar(0)).any())
    fail(ErrorCode::kInvalidPattern, "weights must be non-negative");
  BasicScoreMatrix<Scalar> out = scores;
  for (Index t = 0; t < scores.frames(); ++t) {
    const Scalar w = weights(t);
    if (w == Scalar(1)) continue;
    for (Index s = 0; s < scores.senones(); ++s) {
      Scalar& v = out.values(t, s);
      if (!is_neg_inf(v)) v *= w;
    }
  }
  return out;
}

/// w(t) = factor on `frames`, 1 elsewhere.
WeightVector landmark_weights(Index frames, const FrameSet& landmark_frames, double factor);

}  // namespace lmf

#endif  // LMF_STRATEGY_HPP_
