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

#ifndef LMF_DECODER_HPP_
#define LMF_DECODER_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "lmf/corpus_io.hpp"
#include "lmf/error.hpp"
#include "lmf/types.hpp"

namespace lmf {

/// Senone HMM: init(s) = log p(s_1 = s), trans(i, j) = log p(s_t = j | s_{t-1} = i).
template <typename Scalar = double>
struct BasicTransitionModel {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector init;
  Matrix trans;
  std::vector<std::string> senone_to_phone;

  Index senones() const { return init.size(); }

  /// Shapes agree and init and every trans row exp-sum to 1 within tol.
  void validate(double tol = 1e-6) const {
    const Index s = senones();
    if (s < 1 || trans.rows() != s || trans.cols() != s ||
        static_cast<Index>(senone_to_phone.size()) != s) {
      fail(ErrorCode::kFormatError, "transition model shapes disagree");
    }
    auto exp_sum = [](const auto& v) {
      double total = 0.0;
      for (Index i = 0; i < v.size(); ++i) total += std::exp(static_cast<double>(v(i)));
      return total;
    };
    if (std::abs(exp_sum(init) - 1.0) > tol)
      fail(ErrorCode::kFormatError, "initial distribution does not sum to 1");
    for (Index i = 0; i < s; ++i) {
      if (std::abs(exp_sum(trans.row(i)) - 1.0) > tol)
        fail(ErrorCode::kFormatError, "transition row " + std::to_string(i) + " does not sum to 1");
    }
  }
};

using TransitionModel = BasicTransitionModel<double>;

/// Text layout: "S", the S init values, S rows of S transitions, then S
/// "senone phone" lines.
std::string write_transition_model(const TransitionModel& tm);
TransitionModel read_transition_model(std::string_view text);

struct CollapseOptions {
  bool drop_silence = true;
  std::set<std::string, std::less<>> silence{"sil", "h#", "pau", "epi"};
  FoldingTable folding;  // applied before merging; empty = identity
};

/// Fold, merge runs of identical labels, then drop silence.
std::vector<std::string> collapse_labels(const std::vector<std::string>& labels,
                                         const CollapseOptions& opts = {});

/// Maps states to phones and collapses them. Throws UnknownSenone for states
/// outside the mapping and EmptyInput for an empty sequence.
std::vector<std::string> collapse_states(const std::vector<Index>& states,
                                         const std::vector<std::string>& senone_to_phone,
                                         const CollapseOptions& opts = {});

/// Reference phone string of an alignment under the same conventions.
std::vector<std::string> reference_phones(const PhoneAlignment& alignment,
                                          const CollapseOptions& opts = {});

struct DecodeResult {
  std::vector<Index> states;
  std::vector<std::string> phones;
  double score = 0.0;

  friend bool operator==(const DecodeResult&, const DecodeResult&) = default;
};

template <typename Scalar>
inline constexpr Scalar kNoBeam = std::numeric_limits<Scalar>::infinity();

namespace detail {

template <typename Scalar>
Scalar weighted_emission(Scalar w, Scalar e) {
  return (w == Scalar(1) || is_neg_inf(e)) ? e : w * e;
}

template <typename Scalar>
void check_shapes(const BasicScoreMatrix<Scalar>& scores, const BasicTransitionModel<Scalar>& tm,
                  const BasicWeightVector<Scalar>* weights) {
  if (scores.senones() != tm.senones()) {
    fail(ErrorCode::kShapeError, "scores have " + std::to_string(scores.senones()) +
                                     " senones, model has " + std::to_string(tm.senones()));
  }
  if (scores.frames() < 1) fail(ErrorCode::kShapeError, "no frames to decode");
  if (weights != nullptr && weights->size() != scores.frames())
    fail(ErrorCode::kShapeError, "weight vector length does not match frames");
}

}  // namespace detail

/// Weighted log-likelihood of a given state path:
/// init(s_0) + w_0 e_0(s_0) + sum_{t>0} [trans(s_{t-1}, s_t) + w_t e_t(s_t)],
/// accumulated left to right in exactly the order viterbi() uses.
template <typename Scalar>
Scalar path_score(const BasicScoreMatrix<Scalar>& scores, const BasicTransitionModel<Scalar>& tm,
                  const std::vector<Index>& states,
                  const BasicWeightVector<Scalar>* weights = nullptr) {
  detail::check_shapes(scores, tm, weights);
  if (static_cast<Index>(states.size()) != scores.frames())
    fail(ErrorCode::kShapeError, "state path length does not match frames");
  auto w = [&](Index t) { return weights ? (*weights)(t) : Scalar(1); };
  Scalar total = tm.init(states[0]) + detail::weighted_emission(w(0), scores.values(0, states[0]));
  for (Index t = 1; t < scores.frames(); ++t) {
    const auto i = states[static_cast<std::size_t>(t - 1)];
    const auto j = states[static_cast<std::size_t>(t)];
    total = (total + tm.trans(i, j)) + detail::weighted_emission(w(t), scores.values(t, j));
  }
  return total;
}

/// Exact Viterbi search, optionally beam-pruned.
///
/// Ties go to the lowest senone index, both for the final state and for every
/// back-pointer, which makes the returned path the optimal one that is
/// smallest when compared from the last frame backwards. With a finite beam,
/// states scoring below (frame best - beam) are discarded after each frame.
/// Throws BeamCollapse when no state survives a frame.
template <typename Scalar>
DecodeResult viterbi(const BasicScoreMatrix<Scalar>& scores, const BasicTransitionModel<Scalar>& tm,
                     const BasicWeightVector<Scalar>* weights = nullptr,
                     Scalar beam = kNoBeam<Scalar>, const CollapseOptions& collapse = {}) {
  detail::check_shapes(scores, tm, weights);
  const Index frames = scores.frames();
  const Index senones = scores.senones();
  auto w = [&](Index t) { return weights ? (*weights)(t) : Scalar(1); };

  // Predecessors with a finite transition, ascending, per target state.
  std::vector<std::vector<Index>> preds(static_cast<std::size_t>(senones));
  for (Index i = 0; i < senones; ++i)
    for (Index j = 0; j < senones; ++j)
      if (!is_neg_inf(tm.trans(i, j))) preds[static_cast<std::size_t>(j)].push_back(i);

  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector delta(senones), next(senones);
  Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> back(frames, senones);
  back.row(0).setConstant(-1);

  auto prune = [&](Vector& v, Index t) {
    Scalar best = v.maxCoeff();
    if (is_neg_inf(best) || std::isnan(best))
      fail(ErrorCode::kBeamCollapse, "no surviving state at frame " + std::to_string(t));
    if (beam < kNoBeam<Scalar>) {
      const Scalar floor = best - beam;
      for (Index s = 0; s < senones; ++s)
        if (v(s) < floor) v(s) = kNegInf<Scalar>;
    }
  };

  for (Index s = 0; s < senones; ++s)
    delta(s) = tm.init(s) + detail::weighted_emission(w(0), scores.values(0, s));
  prune(delta, 0);

  for (Index t = 1; t < frames; ++t) {
    const Scalar wt = w(t);
    for (Index j = 0; j < senones; ++j) {
      Scalar best = kNegInf<Scalar>;
      std::int32_t arg = -1;
      for (Index i : preds[static_cast<std::size_t>(j)]) {
        const Scalar v = delta(i) + tm.trans(i, j);
        if (v > best) {
          best = v;
          arg = static_cast<std::int32_t>(i);
        }
      }
      back(t, j) = arg;
      next(j) = arg < 0 ? kNegInf<Scalar> : best + detail::weighted_emission(wt, scores.values(t, j));
    }
    delta.swap(next);
    prune(delta, t);
  }

  Index last = 0;
  for (Index s = 1; s < senones; ++s)
    if (delta(s) > delta(last)) last = s;

  DecodeResult result;
  result.score = static_cast<double>(delta(last));
  result.states.resize(static_cast<std::size_t>(frames));
  result.states.back() = last;
  for (Index t = frames - 1; t > 0; --t) {
    last = back(t, last);
    result.states[static_cast<std::size_t>(t - 1)] = last;
  }
  result.phones = collapse_states(result.states, tm.senone_to_phone, collapse);
  return result;
}

}  // namespace lmf

#endif  // LMF_DECODER_HPP_
