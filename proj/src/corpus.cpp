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

#include "lmf/corpus.hpp"

#include "lmf/error.hpp"

namespace lmf {

namespace fs = std::filesystem;

void Corpus::validate() const {
  if (scores.empty()) return;
  if (scores.size() != alignments.size())
    fail(ErrorCode::kShapeError, "corpus has different numbers of score matrices and alignments");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].frames() != alignments[i].frames()) {
      fail(ErrorCode::kShapeError, alignments[i].utterance_id + ": alignment covers " +
                                       std::to_string(alignments[i].frames()) + " frames, scores have " +
                                       std::to_string(scores[i].frames()));
    }
    if (scores[i].senones() != model.senones())
      fail(ErrorCode::kShapeError, alignments[i].utterance_id + ": senone count differs from model");
  }
}

Corpus load_corpus(const fs::path& dir, const CorpusLoadOptions& opts) {
  Corpus corpus;
  const auto index = read_file(dir / "utterances.csv");
  auto rows = lines(index);
  if (rows.empty() || trim(rows[0]) != "utterance_id,speaker_id,gender")
    fail(ErrorCode::kFormatError, "utterances.csv: bad header");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (trim(rows[i]).empty()) continue;
    auto f = split(trim(rows[i]), ',');
    if (f.size() != 3) fail(ErrorCode::kFormatError, "utterances.csv: expected 3 fields");
    const std::string id(f[0]);
    auto al = parse_alignment(read_file(dir / "alignments" / (id + ".phn")), opts.timing, opts.unit, id);
    al.speaker_id = std::string(f[1]);
    al.gender = parse_gender(f[2]);
    corpus.alignments.push_back(std::move(al));
    const auto score_path = dir / "scores" / (id + ".llm");
    if (opts.require_scores || fs::exists(score_path))
      corpus.scores.push_back(read_score_matrix(read_file(score_path), id));
  }
  if (corpus.alignments.empty()) fail(ErrorCode::kEmptyInput, "corpus has no utterances");
  if (opts.require_scores || fs::exists(dir / "transition.tm"))
    corpus.model = read_transition_model(read_file(dir / "transition.tm"));
  corpus.manners = fs::exists(dir / "manners.txt") ? read_manner_table(read_file(dir / "manners.txt"))
                                                   : MannerTable::timit();
  if (!corpus.scores.empty() && corpus.scores.size() != corpus.alignments.size())
    fail(ErrorCode::kFormatError, "score matrices missing for some utterances");
  corpus.validate();
  return corpus;
}

void write_corpus(const Corpus& corpus, const fs::path& dir) {
  corpus.validate();
  std::string index = "utterance_id,speaker_id,gender\n";
  for (std::size_t i = 0; i < corpus.alignments.size(); ++i) {
    const auto& al = corpus.alignments[i];
    index += al.utterance_id + "," + al.speaker_id + "," + std::string(to_string(al.gender)) + "\n";
    write_file_atomic(dir / "alignments" / (al.utterance_id + ".phn"), write_alignment(al));
    if (!corpus.scores.empty())
      write_file_atomic(dir / "scores" / (al.utterance_id + ".llm"), write_score_matrix(corpus.scores[i]));
  }
  write_file_atomic(dir / "utterances.csv", index);
  write_file_atomic(dir / "transition.tm", write_transition_model(corpus.model));
  write_file_atomic(dir / "manners.txt", write_manner_table(corpus.manners));
}

}  // namespace lmf
