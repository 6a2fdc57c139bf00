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

#ifndef LMF_SYNTH_HPP_
#define LMF_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "lmf/corpus.hpp"

namespace lmf {

/// Synthetic corpus knobs. Phones are left-to-right HMMs; each senone emits a
/// unit-variance spherical Gaussian. Scores are computed under a scoring
/// model whose means are the true means displaced by noise_sigma times a fixed
/// random direction, so noise_sigma = 0 scores with the generating model and
/// larger values raise the baseline error rate.
struct SynthConfig {
  Index n_phones = 12;
  Index states_per_phone = 3;
  Index feature_dim = 4;
  double mean_separation = 10.0;  // typical distance between senone means
  double noise_sigma = 0.0;
  Index utterance_length = 20;    // mean phones per utterance
  Index n_utterances = 100;
  Index utterances_per_speaker = 5;
  Index min_state_frames = 3;
  double extra_duration_mean = 1.0;  // geometric frames on top of the floor
  std::uint64_t seed = 1;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Applies "key = value" entries (keys as the field names, optionally
/// prefixed, e.g. "synth.noise_sigma") on top of `base`. Unknown keys under
/// the prefix throw InvalidConfig.
SynthConfig parse_synth_config(const std::vector<KeyValue>& kvs, const std::string& prefix = "",
                               SynthConfig base = {});
std::string write_synth_config(const SynthConfig& cfg);

/// Deterministic in cfg. The model (bigram, means) comes from a stream
/// derived from cfg.seed; utterance i uses a stream derived from
/// (cfg.seed, i), so utterances can be generated in parallel.
Corpus gen_corpus(const SynthConfig& cfg, int jobs = 1);

}  // namespace lmf

#endif  // LMF_SYNTH_HPP_
