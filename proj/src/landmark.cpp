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

#include "lmf/landmark.hpp"

#include <algorithm>

#include "lmf/error.hpp"

namespace lmf {
namespace {

enum class Role { kPivot, kStartClosure, kStartRelease, kEndRelease };

struct Pending {
  Index frame;
  LandmarkType type;
  Role role;
  bool removed = false;
};

// round(pct * len / 100), half away from zero, in integer arithmetic.
Index percent_of(Index len, Index pct) { return (pct * len + 50) / 100; }

std::vector<Pending> segment_events(const Segment& seg, Manner manner,
                                    AnnotationMode mode) {
  const Index a = seg.start;
  const Index b = seg.end;
  const Index mid = (a + b - 1) / 2;
  Index start = a;
  Index end = b - 1;
  if (mode == AnnotationMode::kOffset) {
    start = std::clamp(a + percent_of(b - a, 33), a, b - 1);
    end = std::clamp(b - 1 - percent_of(b - a, 20), a, b - 1);
  }
  switch (manner) {
    case Manner::kVowel:
      return {{mid, LandmarkType::kV, Role::kPivot}};
    case Manner::kGlide:
      return {{mid, LandmarkType::kG, Role::kPivot}};
    case Manner::kFricative:
      return {{start, LandmarkType::kFc, Role::kStartClosure},
              {end, LandmarkType::kFr, Role::kEndRelease}};
    case Manner::kStop:
      return {{start, LandmarkType::kSc, Role::kStartClosure},
              {end, LandmarkType::kSr, Role::kEndRelease}};
    case Manner::kNasal:
      return {{start, LandmarkType::kNc, Role::kStartClosure},
              {end, LandmarkType::kNr, Role::kEndRelease}};
    case Manner::kAffricate:
      return {{start, LandmarkType::kSr, Role::kStartRelease},
              {start, LandmarkType::kFc, Role::kStartClosure},
              {end, LandmarkType::kFr, Role::kEndRelease}};
    case Manner::kSilence:
    case Manner::kOther:
      return {};
  }
  return {};
}

void remove_role(std::vector<Pending>& events, Role role) {
  for (auto& e : events) {
    if (e.role == role && !e.removed) {
      e.removed = true;
      return;
    }
  }
}

}  // namespace

LandmarkSet annotate(const PhoneAlignment& alignment, const MannerTable& manners,
                     const AnnotationConfig& cfg) {
  if (alignment.segments.empty())
    fail(ErrorCode::kEmptyInput, "alignment '" + alignment.utterance_id + "' has no segments");
  alignment.validate();

  const auto& segs = alignment.segments;
  std::vector<Manner> manner(segs.size());
  std::vector<std::vector<Pending>> per_segment(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    manner[i] = manners.at(segs[i].phone);
    per_segment[i] = segment_events(segs[i], manner[i], cfg.mode);
  }

  std::vector<Pending> merged;
  if (cfg.merge_mc) {
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
      if (is_consonantal(manner[i]) && is_consonantal(manner[i + 1]) &&
          manner[i] != manner[i + 1]) {
        remove_role(per_segment[i], Role::kEndRelease);
        remove_role(per_segment[i + 1], Role::kStartClosure);
        merged.push_back({segs[i].end, LandmarkType::kMC, Role::kPivot});
      }
    }
  }

  LandmarkSet out;
  out.utterance_id = alignment.utterance_id;
  // Junction events belong between the two segments they join.
  std::size_t next_mc = 0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    while (next_mc < merged.size() && merged[next_mc].frame <= segs[i].start) {
      out.events.push_back({merged[next_mc].frame, merged[next_mc].type});
      ++next_mc;
    }
    for (const auto& e : per_segment[i])
      if (!e.removed) out.events.push_back({e.frame, e.type});
  }
  for (; next_mc < merged.size(); ++next_mc)
    out.events.push_back({merged[next_mc].frame, merged[next_mc].type});

  std::stable_sort(out.events.begin(), out.events.end(),
                   [](const LandmarkEvent& x, const LandmarkEvent& y) { return x.frame < y.frame; });
  return out;
}

FrameSet landmark_frames(const LandmarkSet& lms, Index widen_radius, Index frames) {
  if (frames < 1) fail(ErrorCode::kShapeError, "landmark_frames needs frames >= 1");
  if (widen_radius < 0) fail(ErrorCode::kInvalidConfig, "negative widen radius");
  std::vector<bool> hit(static_cast<std::size_t>(frames), false);
  for (const auto& e : lms.events) {
    const Index lo = std::max<Index>(0, e.frame - widen_radius);
    const Index hi = std::min<Index>(frames - 1, e.frame + widen_radius);
    for (Index t = lo; t <= hi; ++t) hit[static_cast<std::size_t>(t)] = true;
  }
  FrameSet out;
  for (Index t = 0; t < frames; ++t)
    if (hit[static_cast<std::size_t>(t)]) out.push_back(t);
  return out;
}

double landmark_fraction(const LandmarkSet& lms, Index widen_radius, Index frames) {
  return static_cast<double>(landmark_frames(lms, widen_radius, frames).size()) /
         static_cast<double>(frames);
}

}  // namespace lmf
