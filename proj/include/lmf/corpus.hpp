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

#ifndef LMF_CORPUS_HPP_
#define LMF_CORPUS_HPP_

// A corpus directory:
//
//   utterances.csv      utterance_id,speaker_id,gender
//   alignments/<id>.phn "start end phone" lines (frames or samples)
//   scores/<id>.llm     binary score matrices
//   transition.tm       transition model
//   manners.txt         optional; the TIMIT table is used when absent

#include <filesystem>
#include <vector>

#include "lmf/corpus_io.hpp"
#include "lmf/decoder.hpp"

namespace lmf {

struct Corpus {
  std::vector<PhoneAlignment> alignments;
  std::vector<ScoreMatrix> scores;  // parallel to alignments; may be empty
  TransitionModel model;
  MannerTable manners;

  /// Scores line up with alignments and the model.
  void validate() const;
};

struct CorpusLoadOptions {
  FrameTiming timing;
  TimeUnit unit = TimeUnit::kFrames;
  bool require_scores = true;
};

Corpus load_corpus(const std::filesystem::path& dir, const CorpusLoadOptions& opts = {});
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

}  // namespace lmf

#endif  // LMF_CORPUS_HPP_
