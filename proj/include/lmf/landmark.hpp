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

#ifndef LMF_LANDMARK_HPP_
#define LMF_LANDMARK_HPP_

#include "lmf/types.hpp"

namespace lmf {

enum class AnnotationMode {
  kBoundary,  // events on the segment edges
  kOffset,    // start events +33% into the segment, end events -20% from its end
};

struct AnnotationConfig {
  AnnotationMode mode = AnnotationMode::kBoundary;
  Index widen_radius = 0;
  bool merge_mc = true;
};

/// Labels landmarks from phone boundaries.
///
/// Per segment [a, b) of manner m:
///   vowel, glide        V / G at floor((a + b - 1) / 2)
///   fricative           Fc at a, Fr at b - 1
///   stop                Sc at a, Sr at b - 1
///   nasal               Nc at a, Nr at b - 1
///   affricate           Sr and Fc at a, Fr at b - 1
///   silence, other      nothing
///
/// With merge_mc, when two abutting consonantal segments differ in manner the
/// release of the first and the closure of the second (Fc for an affricate)
/// collapse into one MC event at the junction frame b.
///
/// Throws EmptyInput for an empty alignment and UnknownPhone for labels
/// missing from `manners`.
LandmarkSet annotate(const PhoneAlignment& alignment, const MannerTable& manners,
                     const AnnotationConfig& cfg = {});

/// Union of [frame - r, frame + r] over events, clipped to [0, frames).
FrameSet landmark_frames(const LandmarkSet& lms, Index widen_radius, Index frames);

/// |landmark_frames| / frames.
double landmark_fraction(const LandmarkSet& lms, Index widen_radius, Index frames);

}  // namespace lmf

#endif  // LMF_LANDMARK_HPP_
