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

#ifndef LMF_TYPES_HPP_
#define LMF_TYPES_HPP_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "lmf/common.hpp"

namespace lmf {

enum class Gender { kFemale, kMale, kUnknown };

std::string_view to_string(Gender g);
Gender parse_gender(std::string_view s);

enum class Manner {
  kVowel,
  kGlide,
  kFricative,
  kAffricate,
  kNasal,
  kStop,
  kSilence,
  kOther,
};

std::string_view to_string(Manner m);
/// Throws ParseError on unknown names.
Manner parse_manner(std::string_view s);
/// Fricative, affricate, nasal and stop: the manners that carry closure and
/// release landmarks.
bool is_consonantal(Manner m);

struct Segment {
  std::string phone;
  Index start = 0;  // first frame
  Index end = 0;    // one past the last frame

  Index length() const { return end - start; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Contiguous, frame-indexed phone segmentation of one utterance.
struct PhoneAlignment {
  std::string utterance_id;
  std::vector<Segment> segments;
  std::string speaker_id;
  Gender gender = Gender::kUnknown;

  Index frames() const { return segments.empty() ? 0 : segments.back().end; }
  /// Throws MalformedAlignment if segments overlap, leave gaps, are empty, or
  /// do not start at frame 0.
  void validate() const;
};

struct FrameTiming {
  double sample_rate = 16000.0;
  Index frame_length = 400;  // samples
  Index frame_shift = 160;   // samples

  /// Sample index -> frame index, floor(b / frame_shift).
  Index sample_to_frame(Index sample) const { return sample / frame_shift; }
  void validate() const;
};

/// Phone label -> manner of articulation. Lookups of unknown phones throw
/// UnknownPhone.
class MannerTable {
 public:
  MannerTable() = default;
  explicit MannerTable(std::map<std::string, Manner> table)
      : table_(table.begin(), table.end()) {}

  /// The 61-symbol TIMIT inventory; closures and pauses map to silence.
  static MannerTable timit();

  Manner at(std::string_view phone) const;
  bool contains(std::string_view phone) const;
  void set(std::string phone, Manner m) { table_[std::move(phone)] = m; }
  const std::map<std::string, Manner, std::less<>>& entries() const {
    return table_;
  }
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, Manner, std::less<>> table_;
};

/// T x S per-frame, per-senone log-likelihoods, frame-major.
template <typename Scalar = double>
struct BasicScoreMatrix {
  using Matrix =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  std::string utterance_id;
  Matrix values;

  BasicScoreMatrix() = default;
  BasicScoreMatrix(std::string id, Matrix v)
      : utterance_id(std::move(id)), values(std::move(v)) {}

  Index frames() const { return values.rows(); }
  Index senones() const { return values.cols(); }
};

using ScoreMatrix = BasicScoreMatrix<double>;

/// Per-frame emission weights w(t); 1 leaves a frame untouched.
template <typename Scalar = double>
using BasicWeightVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using WeightVector = BasicWeightVector<double>;

/// Sorted, duplicate-free frame indices.
using FrameSet = std::vector<Index>;

/// Frame-drop indicator g(t); true means the frame's scores are replaced.
struct FrameMask {
  Eigen::Array<bool, Eigen::Dynamic, 1> dropped;

  FrameMask() = default;
  explicit FrameMask(Index frames)
      : dropped(Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(frames, false)) {}

  static FrameMask keep_all(Index frames) { return FrameMask(frames); }
  static FrameMask drop_all(Index frames) {
    FrameMask m(frames);
    m.dropped.setConstant(true);
    return m;
  }

  Index frames() const { return dropped.size(); }
  Index drop_count() const { return dropped.count(); }
  double drop_rate() const {
    return frames() == 0 ? 0.0
                         : static_cast<double>(drop_count()) /
                               static_cast<double>(frames());
  }
  FrameSet dropped_frames() const;

  friend bool operator==(const FrameMask& a, const FrameMask& b) {
    return a.frames() == b.frames() && (a.dropped == b.dropped).all();
  }
};

enum class LandmarkType { kV, kG, kFc, kFr, kSc, kSr, kNc, kNr, kMC };

std::string_view to_string(LandmarkType t);
LandmarkType parse_landmark_type(std::string_view s);

struct LandmarkEvent {
  Index frame = 0;
  LandmarkType type = LandmarkType::kV;
  friend bool operator==(const LandmarkEvent&, const LandmarkEvent&) = default;
};

struct LandmarkSet {
  std::string utterance_id;
  std::vector<LandmarkEvent> events;  // sorted by frame
  friend bool operator==(const LandmarkSet& a, const LandmarkSet& b) {
    return a.events == b.events;
  }
};

inline constexpr std::string_view kInsToken = "<ins>";
inline constexpr std::string_view kDelToken = "<del>";

/// Edit-operation counts of a hypothesis against a reference. Confusion keys
/// are (ref, hyp); a deletion is (p, "<del>") and an insertion is ("<ins>", p).
/// Matches are recorded as (p, p).
struct PERReport {
  Index n_ref = 0;
  Index ins = 0;
  Index del = 0;
  Index sub = 0;
  std::map<std::pair<std::string, std::string>, Index> confusion;

  Index errors() const { return ins + del + sub; }
  Index hits() const { return n_ref - del - sub; }
  /// 100 * errors / N. With an empty reference this is 0 for an empty
  /// hypothesis and +inf otherwise.
  double per() const;

  PERReport& operator+=(const PERReport& other);
  friend bool operator==(const PERReport&, const PERReport&) = default;
};

}  // namespace lmf

#endif  // LMF_TYPES_HPP_
