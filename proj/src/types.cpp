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

#include "lmf/types.hpp"

#include <limits>

#include "lmf/error.hpp"

namespace lmf {

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::kFemale: return "F";
    case Gender::kMale: return "M";
    case Gender::kUnknown: return "U";
  }
  return "U";
}

Gender parse_gender(std::string_view s) {
  if (s == "F" || s == "f") return Gender::kFemale;
  if (s == "M" || s == "m") return Gender::kMale;
  if (s == "U" || s == "u" || s == "unknown" || s.empty()) return Gender::kUnknown;
  fail(ErrorCode::kParseError, "bad gender '" + std::string(s) + "'");
}

std::string_view to_string(Manner m) {
  switch (m) {
    case Manner::kVowel: return "vowel";
    case Manner::kGlide: return "glide";
    case Manner::kFricative: return "fricative";
    case Manner::kAffricate: return "affricate";
    case Manner::kNasal: return "nasal";
    case Manner::kStop: return "stop";
    case Manner::kSilence: return "silence";
    case Manner::kOther: return "other";
  }
  return "other";
}

Manner parse_manner(std::string_view s) {
  for (Manner m : {Manner::kVowel, Manner::kGlide, Manner::kFricative,
                   Manner::kAffricate, Manner::kNasal, Manner::kStop,
                   Manner::kSilence, Manner::kOther}) {
    if (s == to_string(m)) return m;
  }
  fail(ErrorCode::kParseError, "bad manner '" + std::string(s) + "'");
}

bool is_consonantal(Manner m) {
  return m == Manner::kFricative || m == Manner::kAffricate ||
         m == Manner::kNasal || m == Manner::kStop;
}

void PhoneAlignment::validate() const {
  Index expect = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    if (s.start != expect) {
      fail(ErrorCode::kMalformedAlignment,
           utterance_id + ": segment " + std::to_string(i) + " starts at " +
               std::to_string(s.start) + ", expected " + std::to_string(expect));
    }
    if (s.end <= s.start) {
      fail(ErrorCode::kMalformedAlignment,
           utterance_id + ": segment " + std::to_string(i) + " is empty");
    }
    expect = s.end;
  }
}

void FrameTiming::validate() const {
  if (frame_shift < 1 || frame_length < frame_shift || !(sample_rate > 0.0))
    fail(ErrorCode::kInvalidConfig, "frame timing requires shift >= 1 and length >= shift");
}

MannerTable MannerTable::timit() {
  MannerTable t;
  auto add = [&](std::initializer_list<const char*> phones, Manner m) {
    for (const char* p : phones) t.set(p, m);
  };
  add({"iy", "ih", "eh", "ey", "ae", "aa", "aw", "ay", "ah", "ao", "oy", "ow",
       "uh", "uw", "ux", "er", "ax", "ix", "axr", "ax-h"},
      Manner::kVowel);
  add({"l", "r", "w", "y", "hh", "hv", "el"}, Manner::kGlide);
  add({"b", "d", "g", "p", "t", "k", "dx", "q"}, Manner::kStop);
  add({"jh", "ch"}, Manner::kAffricate);
  add({"s", "sh", "z", "zh", "f", "th", "v", "dh"}, Manner::kFricative);
  add({"m", "n", "ng", "em", "en", "eng", "nx"}, Manner::kNasal);
  add({"bcl", "dcl", "gcl", "pcl", "tcl", "kcl", "pau", "epi", "h#"},
      Manner::kSilence);
  return t;
}

Manner MannerTable::at(std::string_view phone) const {
  auto it = table_.find(phone);
  if (it == table_.end())
    fail(ErrorCode::kUnknownPhone, "no manner for phone '" + std::string(phone) + "'");
  return it->second;
}

bool MannerTable::contains(std::string_view phone) const {
  return table_.find(phone) != table_.end();
}

FrameSet FrameMask::dropped_frames() const {
  FrameSet out;
  for (Index t = 0; t < frames(); ++t)
    if (dropped(t)) out.push_back(t);
  return out;
}

std::string_view to_string(LandmarkType t) {
  switch (t) {
    case LandmarkType::kV: return "V";
    case LandmarkType::kG: return "G";
    case LandmarkType::kFc: return "Fc";
    case LandmarkType::kFr: return "Fr";
    case LandmarkType::kSc: return "Sc";
    case LandmarkType::kSr: return "Sr";
    case LandmarkType::kNc: return "Nc";
    case LandmarkType::kNr: return "Nr";
    case LandmarkType::kMC: return "MC";
  }
  return "V";
}

LandmarkType parse_landmark_type(std::string_view s) {
  for (LandmarkType t : {LandmarkType::kV, LandmarkType::kG, LandmarkType::kFc,
                         LandmarkType::kFr, LandmarkType::kSc, LandmarkType::kSr,
                         LandmarkType::kNc, LandmarkType::kNr, LandmarkType::kMC}) {
    if (s == to_string(t)) return t;
  }
  fail(ErrorCode::kFormatError, "bad landmark type '" + std::string(s) + "'");
}

double PERReport::per() const {
  if (n_ref == 0)
    return errors() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return 100.0 * static_cast<double>(errors()) / static_cast<double>(n_ref);
}

PERReport& PERReport::operator+=(const PERReport& other) {
  n_ref += other.n_ref;
  ins += other.ins;
  del += other.del;
  sub += other.sub;
  for (const auto& [key, count] : other.confusion) confusion[key] += count;
  return *this;
}

}  // namespace lmf
