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

#include "lmf/strategy.hpp"

#include <cmath>
#include <numbers>

namespace lmf {
namespace {

void require_frames(Index frames) {
  if (frames < 1) fail(ErrorCode::kShapeError, "mask needs at least one frame");
}

void require_same_length(const FrameMask& a, Index frames) {
  if (a.frames() != frames) {
    fail(ErrorCode::kShapeError, "mask length " + std::to_string(a.frames()) +
                                     " does not match " + std::to_string(frames));
  }
}

}  // namespace

Eigen::Array<bool, Eigen::Dynamic, 1> frame_indicator(const FrameSet& set, Index frames) {
  Eigen::Array<bool, Eigen::Dynamic, 1> out =
      Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(frames, false);
  for (Index t : set)
    if (t >= 0 && t < frames) out(t) = true;
  return out;
}

FrameMask mask_regular(Index frames, Index period, Index drop_count) {
  require_frames(frames);
  if (period < 2 || drop_count < 1 || drop_count >= period) {
    fail(ErrorCode::kInvalidPattern, "regular pattern needs period >= 2 and 1 <= D < P (got P=" +
                                         std::to_string(period) + ", D=" +
                                         std::to_string(drop_count) + ")");
  }
  FrameMask mask(frames);
  for (Index t = 0; t < frames; ++t) mask.dropped(t) = (t % period) < drop_count;
  return mask;
}

bool is_regular(const FrameMask& mask, Index period, Index drop_count) {
  if (period < 2) return false;
  for (Index t = 0; t < mask.frames(); ++t)
    if (mask.dropped(t) != ((t % period) < drop_count)) return false;
  return true;
}

FrameMask mask_random(Index frames, Index n_drop, std::uint64_t seed,
                      const FrameSet& protected_frames) {
  require_frames(frames);
  auto guard = frame_indicator(protected_frames, frames);
  std::vector<Index> pool;
  for (Index t = 0; t < frames; ++t)
    if (!guard(t)) pool.push_back(t);
  if (n_drop < 0 || n_drop > static_cast<Index>(pool.size())) {
    fail(ErrorCode::kInvalidPattern, "cannot drop " + std::to_string(n_drop) + " of " +
                                         std::to_string(pool.size()) + " unprotected frames");
  }
  Rng rng(seed);
  FrameMask mask(frames);
  for (Index t : rng.sample(std::move(pool), static_cast<std::size_t>(n_drop)))
    mask.dropped(t) = true;
  return mask;
}

FrameMask mask_landmark(const FrameSet& landmark_frames, Index frames,
                        LandmarkRegime regime) {
  require_frames(frames);
  for (Index t : landmark_frames) {
    if (t < 0 || t >= frames)
      fail(ErrorCode::kShapeError, "landmark frame " + std::to_string(t) + " out of range");
  }
  FrameMask mask(frames);
  auto lm = frame_indicator(landmark_frames, frames);
  if (regime == LandmarkRegime::kKeep) {
    if (landmark_frames.empty()) warn("landmark-keep with no landmarks drops every frame");
    mask.dropped = !lm;
  } else {
    mask.dropped = lm;
  }
  return mask;
}

FrameMask mask_or(const FrameMask& a, const FrameMask& b) {
  require_same_length(b, a.frames());
  FrameMask out(a.frames());
  out.dropped = a.dropped || b.dropped;
  return out;
}

FrameMask mask_subtract(const FrameMask& a, const FrameSet& protected_frames) {
  FrameMask out(a.frames());
  out.dropped = a.dropped && !frame_indicator(protected_frames, a.frames());
  return out;
}

FrameMask adjust_mask_to_rate(const FrameMask& mask, Index target_n,
                              const FrameSet& protected_frames, std::uint64_t seed) {
  const Index current = mask.drop_count();
  if (target_n == current) return mask;
  auto guard = frame_indicator(protected_frames, mask.frames());
  const bool add = target_n > current;
  std::vector<Index> pool;
  for (Index t = 0; t < mask.frames(); ++t)
    if (!guard(t) && mask.dropped(t) != add) pool.push_back(t);
  const Index need = add ? target_n - current : current - target_n;
  if (target_n < 0 || need > static_cast<Index>(pool.size())) {
    fail(ErrorCode::kInvalidPattern,
         "cannot reach " + std::to_string(target_n) + " dropped frames from " +
             std::to_string(current) + " without touching protected frames");
  }
  Rng rng(seed);
  FrameMask out = mask;
  for (Index t : rng.sample(std::move(pool), static_cast<std::size_t>(need)))
    out.dropped(t) = add;
  return out;
}

InterpFilter design_interp_filter(Index period) {
  if (period < 2 || period > 8)
    fail(ErrorCode::kInvalidPattern, "interpolation period must be in [2, 8]");
  InterpFilter f;
  f.period = period;
  const double half = static_cast<double>(InterpFilter::kHalfWidth);
  auto raw = [&](Index k) {
    const double x = static_cast<double>(k) / static_cast<double>(period);
    const double sinc = std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
    const double window = 0.54 + 0.46 * std::cos(std::numbers::pi * static_cast<double>(k) / half);
    return sinc * window;
  };
  double coset_sum = 0.0;
  for (Index k = 1; k <= InterpFilter::kHalfWidth; ++k)
    if (k % period != 0) coset_sum += 2.0 * raw(k);
  for (Index k = 0; k <= InterpFilter::kHalfWidth; ++k) {
    double h = 0.0;
    if (k == 0) {
      h = 1.0;
    } else if (k % period != 0) {
      h = raw(k) / coset_sum;
    }
    f.taps[static_cast<std::size_t>(InterpFilter::kHalfWidth + k)] = h;
    f.taps[static_cast<std::size_t>(InterpFilter::kHalfWidth - k)] = h;
  }
  return f;
}

std::string_view to_string(Replacement r) {
  switch (r) {
    case Replacement::kCopy: return "copy";
    case Replacement::kFill0: return "fill_0";
    case Replacement::kFillConst: return "fill_const";
    case Replacement::kUpsample: return "upsample";
  }
  return "copy";
}

Replacement parse_replacement(std::string_view s) {
  for (Replacement r : {Replacement::kCopy, Replacement::kFill0, Replacement::kFillConst,
                        Replacement::kUpsample}) {
    if (s == to_string(r)) return r;
  }
  if (s == "fill0") return Replacement::kFill0;
  fail(ErrorCode::kInvalidConfig, "unknown replacement method '" + std::string(s) + "'");
}

WeightVector landmark_weights(Index frames, const FrameSet& landmark_frames, double factor) {
  if (!(factor >= 0.0)) fail(ErrorCode::kInvalidPattern, "weight factor must be >= 0");
  WeightVector w = WeightVector::Ones(frames);
  for (Index t : landmark_frames)
    if (t >= 0 && t < frames) w(t) = factor;
  return w;
}

}  // namespace lmf
