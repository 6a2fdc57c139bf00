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

#include "lmf/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "lmf/error.hpp"

namespace lmf {
namespace {

constexpr std::uint64_t kModelStream = 0x6d6f64656cULL;
constexpr std::uint64_t kPerturbStream = 0x7065727475ULL;

std::string numbered(const char* prefix, Index i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*lld", prefix, width, static_cast<long long>(i));
  return buf;
}

Eigen::MatrixXd gaussian_matrix(Rng& rng, Index rows, Index cols, double scale) {
  Eigen::MatrixXd m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = scale * rng.normal();
  return m;
}

std::size_t draw(Rng& rng, const std::vector<double>& probs) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding left u above the running sum; take the last non-zero entry.
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0.0) return i;
  return 0;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_phones < 1 || states_per_phone < 1 || feature_dim < 1 || utterance_length < 1 ||
      n_utterances < 1 || utterances_per_speaker < 1 || min_state_frames < 1) {
    fail(ErrorCode::kInvalidConfig, "synthetic corpus counts must be >= 1");
  }
  if (!(noise_sigma >= 0.0) || !(mean_separation >= 0.0) || !(extra_duration_mean >= 0.0))
    fail(ErrorCode::kInvalidConfig, "synthetic corpus sigma, separation and duration must be >= 0");
}

SynthConfig parse_synth_config(const std::vector<KeyValue>& kvs, const std::string& prefix,
                               SynthConfig cfg) {
  for (const auto& kv : kvs) {
    if (kv.key.rfind(prefix, 0) != 0) continue;
    const std::string key = kv.key.substr(prefix.size());
    auto as_index = [&](Index& field) {
      auto v = parse_int(kv.value);
      if (!v) fail(ErrorCode::kInvalidConfig, kv.key + " must be an integer");
      field = static_cast<Index>(*v);
    };
    auto as_real = [&](double& field) {
      auto v = parse_double(kv.value);
      if (!v) fail(ErrorCode::kInvalidConfig, kv.key + " must be a number");
      field = *v;
    };
    if (key == "n_phones") as_index(cfg.n_phones);
    else if (key == "states_per_phone") as_index(cfg.states_per_phone);
    else if (key == "feature_dim") as_index(cfg.feature_dim);
    else if (key == "mean_separation") as_real(cfg.mean_separation);
    else if (key == "noise_sigma") as_real(cfg.noise_sigma);
    else if (key == "utterance_length") as_index(cfg.utterance_length);
    else if (key == "n_utterances") as_index(cfg.n_utterances);
    else if (key == "utterances_per_speaker") as_index(cfg.utterances_per_speaker);
    else if (key == "min_state_frames") as_index(cfg.min_state_frames);
    else if (key == "extra_duration_mean") as_real(cfg.extra_duration_mean);
    else if (key == "seed") {
      auto v = parse_int(kv.value);
      if (!v || *v < 0) fail(ErrorCode::kInvalidConfig, kv.key + " must be a non-negative integer");
      cfg.seed = static_cast<std::uint64_t>(*v);
    } else {
      fail(ErrorCode::kInvalidConfig, "unknown synthetic corpus key '" + kv.key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

std::string write_synth_config(const SynthConfig& cfg) {
  std::string out;
  auto put = [&](const char* key, const std::string& v) { out += std::string(key) + " = " + v + "\n"; };
  put("n_phones", std::to_string(cfg.n_phones));
  put("states_per_phone", std::to_string(cfg.states_per_phone));
  put("feature_dim", std::to_string(cfg.feature_dim));
  put("mean_separation", format_double(cfg.mean_separation));
  put("noise_sigma", format_double(cfg.noise_sigma));
  put("utterance_length", std::to_string(cfg.utterance_length));
  put("n_utterances", std::to_string(cfg.n_utterances));
  put("utterances_per_speaker", std::to_string(cfg.utterances_per_speaker));
  put("min_state_frames", std::to_string(cfg.min_state_frames));
  put("extra_duration_mean", format_double(cfg.extra_duration_mean));
  put("seed", std::to_string(cfg.seed));
  return out;
}

Corpus gen_corpus(const SynthConfig& cfg, int jobs) {
  cfg.validate();
  const Index phones = cfg.n_phones;
  const Index per_phone = cfg.states_per_phone;
  const Index senones = phones * per_phone;
  const Index dim = cfg.feature_dim;

  Corpus corpus;
  std::vector<std::string> names;
  static const Manner kCycle[] = {Manner::kVowel, Manner::kFricative, Manner::kStop, Manner::kNasal,
                                  Manner::kGlide};
  for (Index p = 0; p < phones; ++p) {
    names.push_back(numbered("p", p, 2));
    corpus.manners.set(names.back(), kCycle[p % 5]);
  }

  Rng model_rng(derive_seed(cfg.seed, kModelStream));
  // Bigram without self-loops so consecutive phone tokens stay distinct.
  std::vector<std::vector<double>> bigram(static_cast<std::size_t>(phones));
  for (Index a = 0; a < phones; ++a) {
    auto& row = bigram[static_cast<std::size_t>(a)];
    row.assign(static_cast<std::size_t>(phones), 0.0);
    double total = 0.0;
    for (Index b = 0; b < phones; ++b) {
      if (b == a && phones > 1) continue;
      row[static_cast<std::size_t>(b)] = 0.1 + model_rng.uniform();
      total += row[static_cast<std::size_t>(b)];
    }
    for (double& v : row) v /= total;
  }
  const double spread = cfg.mean_separation / std::sqrt(2.0 * static_cast<double>(dim));
  const Eigen::MatrixXd means = gaussian_matrix(model_rng, senones, dim, spread);
  Rng perturb_rng(derive_seed(cfg.seed, kPerturbStream));
  const Eigen::MatrixXd scoring_means =
      means + gaussian_matrix(perturb_rng, senones, dim, 1.0) * cfg.noise_sigma;

  // Transition model: self-loop chosen to match the mean state duration.
  const double mean_dur = static_cast<double>(cfg.min_state_frames) + cfg.extra_duration_mean;
  const double stay = 1.0 - 1.0 / mean_dur;
  auto& tm = corpus.model;
  tm.init = Eigen::VectorXd::Constant(senones, kNegInf<double>);
  tm.trans = TransitionModel::Matrix::Constant(senones, senones, kNegInf<double>);
  tm.senone_to_phone.resize(static_cast<std::size_t>(senones));
  for (Index p = 0; p < phones; ++p) {
    tm.init(p * per_phone) = -std::log(static_cast<double>(phones));
    for (Index j = 0; j < per_phone; ++j) {
      const Index s = p * per_phone + j;
      tm.senone_to_phone[static_cast<std::size_t>(s)] = names[static_cast<std::size_t>(p)];
      if (stay > 0.0) tm.trans(s, s) = std::log(stay);
      if (j + 1 < per_phone) {
        tm.trans(s, s + 1) = std::log1p(-stay);
      } else {
        for (Index q = 0; q < phones; ++q) {
          const double pq = bigram[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
          if (pq <= 0.0) continue;
          const double v = std::log1p(-stay) + std::log(pq);
          // q == p only happens with a single phone, where it adds to the self-loop.
          Index target = q * per_phone;
          double& cell = tm.trans(s, target);
          cell = is_neg_inf(cell) ? v : std::log(std::exp(cell) + std::exp(v));
        }
      }
    }
  }

  const Index n = cfg.n_utterances;
  corpus.alignments.resize(static_cast<std::size_t>(n));
  corpus.scores.resize(static_cast<std::size_t>(n));
  const double log_norm = -0.5 * static_cast<double>(dim) * std::log(2.0 * std::numbers::pi);
  const double success = 1.0 / (1.0 + cfg.extra_duration_mean);
  const std::vector<double> uniform_phone(static_cast<std::size_t>(phones), 1.0 / static_cast<double>(phones));

  parallel_for(n, jobs, [&](Index u) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(u) + 1));
    const Index half = cfg.utterance_length / 2;
    const Index length = std::max<Index>(
        1, half + static_cast<Index>(rng.below(static_cast<std::uint64_t>(cfg.utterance_length - half) * 2 + 1)));

    PhoneAlignment al;
    al.utterance_id = numbered("utt", u, 5);
    const Index speaker = u / cfg.utterances_per_speaker;
    al.speaker_id = numbered("spk", speaker, 3);
    al.gender = speaker % 2 == 0 ? Gender::kFemale : Gender::kMale;

    std::vector<Index> state_path;
    std::size_t phone = draw(rng, uniform_phone);
    for (Index k = 0; k < length; ++k) {
      if (k > 0) phone = draw(rng, bigram[phone]);
      const Index start = static_cast<Index>(state_path.size());
      for (Index j = 0; j < per_phone; ++j) {
        Index dur = cfg.min_state_frames;
        while (rng.uniform() >= success) ++dur;
        for (Index f = 0; f < dur; ++f) state_path.push_back(static_cast<Index>(phone) * per_phone + j);
      }
      al.segments.push_back({names[phone], start, static_cast<Index>(state_path.size())});
    }

    const Index frames = static_cast<Index>(state_path.size());
    ScoreMatrix sm(al.utterance_id, ScoreMatrix::Matrix(frames, senones));
    Eigen::RowVectorXd obs(dim);
    for (Index t = 0; t < frames; ++t) {
      for (Index d = 0; d < dim; ++d) obs(d) = means(state_path[static_cast<std::size_t>(t)], d) + rng.normal();
      sm.values.row(t) =
          (log_norm - 0.5 * (scoring_means.rowwise() - obs).rowwise().squaredNorm().array()).matrix().transpose();
    }
    corpus.alignments[static_cast<std::size_t>(u)] = std::move(al);
    corpus.scores[static_cast<std::size_t>(u)] = std::move(sm);
  });
  return corpus;
}

}  // namespace lmf
