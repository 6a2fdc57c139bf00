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

#ifndef LMF_EXPERIMENT_HPP_
#define LMF_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lmf/corpus.hpp"
#include "lmf/landmark.hpp"
#include "lmf/stats.hpp"
#include "lmf/strategy_spec.hpp"
#include "lmf/synth.hpp"

namespace lmf {

inline constexpr std::string_view kBaselineName = "baseline";

struct NamedStrategy {
  std::string name;
  StrategySpec spec;
  std::string compare = std::string(kBaselineName);  // Wilcoxon / t-test partner
};

enum class SweepParameter { kOverweight, kDropRate };
std::string_view to_string(SweepParameter p);

struct SweepConfig {
  std::string strategy;
  SweepParameter parameter = SweepParameter::kOverweight;
  std::vector<double> values;
};

struct ReportFormats {
  bool csv = true;
  bool svg = false;
};
/// "csv", "svg", "csv,svg". CSV is always emitted.
ReportFormats parse_formats(std::string_view text);

// Config file keys (key = value):
//
//   corpus_dir = DIR            or any synth.<field> key, not both
//   unit = frames|samples, sample_rate, frame_length, frame_shift
//   manners = FILE, fold = FILE, drop_silence = true|false
//   strategy.NAME = SPEC        in file order; NAME != baseline
//   compare.NAME = OTHER        default baseline
//   overweight = X              applied to every strategy that carries one
//   widen_radius, annotation_mode = boundary|offset, merge_mc
//   cv_k = K (0: no folds), cv_seed, seed, repeats, beam, model_tag
//   sweep.strategy, sweep.parameter = overweight|drop_rate, sweep.values
//   out = DIR, format = csv,svg
struct ExperimentConfig {
  std::optional<std::filesystem::path> corpus_dir;
  std::optional<SynthConfig> synth;
  CorpusLoadOptions load;
  std::optional<std::filesystem::path> manners_path;
  CollapseOptions collapse;

  std::vector<NamedStrategy> strategies;
  std::optional<double> overweight;
  AnnotationConfig annotation;

  int cv_k = 0;
  std::optional<std::uint64_t> cv_seed;  // defaults to seed
  std::uint64_t seed = 1;
  int repeats = 10;
  double beam = kNoBeam<double>;
  std::string model_tag = "default";

  std::optional<SweepConfig> sweep;
  std::filesystem::path out_dir;
  ReportFormats formats;

  /// Throws InvalidConfig.
  void validate() const;
  std::uint64_t fold_seed() const { return cv_seed.value_or(seed); }
};

/// Paths inside the config are resolved against `base_dir`.
ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir = {});

/// Corpus plus what every strategy needs: landmarks and reference phones.
struct PreparedCorpus {
  Corpus corpus;
  std::vector<LandmarkSet> landmarks;
  std::vector<std::vector<std::string>> references;
  std::optional<FoldSpec> folds;
};

PreparedCorpus prepare_corpus(const ExperimentConfig& cfg, int jobs = 1);
PreparedCorpus prepare_corpus(Corpus corpus, const ExperimentConfig& cfg, int jobs = 1);

/// Everything one strategy produced on every utterance.
struct StrategyOutcome {
  std::string name;
  std::string spec;
  std::vector<FrameMask> masks;
  std::vector<std::uint64_t> checksums;  // of the transformed binary matrices
  std::vector<DecodeResult> decodes;
  std::vector<PERReport> reports;
  PERReport total;
  Index dropped = 0;
  Index frames = 0;

  double drop_rate() const;  // percent
};

/// Realize, transform, decode and score one strategy. `matched` supplies
/// already evaluated strategies for random:match=NAME terms.
StrategyOutcome evaluate_strategy(const PreparedCorpus& data, const ExperimentConfig& cfg,
                                  const std::string& name, const StrategySpec& spec,
                                  std::uint64_t seed,
                                  const std::vector<const StrategyOutcome*>& matched, int jobs = 1);

/// The untouched matrices: identity spec, no weights.
StrategyOutcome evaluate_baseline(const PreparedCorpus& data, const ExperimentConfig& cfg, int jobs = 1);

struct ReportRowSummary {
  std::string strategy;
  std::optional<double> drop_rate;  // percent
  std::optional<double> per;
  std::optional<double> delta_per;
  std::optional<double> mean;  // per-fold ΔPER, or ΔPER without folds
  std::optional<double> stdev;
  std::optional<double> p_wilcoxon;
  std::optional<double> p_t;
  std::optional<double> x;  // sweep value
};

struct RowError {
  std::string strategy;
  std::string error;
};

struct ExperimentReport {
  std::string kind = "run";  // run | sweep
  std::uint64_t seed = 0;
  std::string model_tag;
  std::optional<SweepParameter> parameter;
  std::optional<double> baseline_per;
  std::vector<ReportRowSummary> rows;  // runs: baseline first; sweeps: one per value
  std::vector<RowError> errors;
  std::vector<TestResult> tests;
};

/// Row statistics of `outcome` against the baseline and its comparison
/// partner (which may be the baseline itself).
ReportRowSummary summarize_outcome(const PreparedCorpus& data, const StrategyOutcome& baseline,
                                   const StrategyOutcome& outcome, const StrategyOutcome& partner,
                                   std::vector<TestResult>* tests = nullptr);

/// Runs every configured strategy once with cfg.seed. When cfg.out_dir is
/// set, per-strategy artifacts and the report are written there.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const PreparedCorpus& data, int jobs = 1);
ExperimentReport run_experiment(const ExperimentConfig& cfg, int jobs = 1);

/// One row per sweep value, each the mean over cfg.repeats seeds
/// (seed, seed + 1, ...) when the swept strategy is stochastic. The baseline
/// is decoded once and reported through baseline_per only.
ExperimentReport sweep(const ExperimentConfig& cfg, const PreparedCorpus& data, int jobs = 1);
ExperimentReport sweep(const ExperimentConfig& cfg, int jobs = 1);

/// Per-strategy artifacts: masks, checksums, hypotheses, reports.
void persist_outcome(const StrategyOutcome& outcome, const PreparedCorpus& data,
                     const StrategyOutcome& baseline, const std::filesystem::path& dir);

std::string write_results_csv(const ExperimentReport& report);
std::string write_errors_csv(const ExperimentReport& report);
/// Bar chart of ΔPER per strategy for runs, line chart of the swept value
/// against PER and ΔPER for sweeps.
std::string render_svg(const ExperimentReport& report);

/// results.csv, errors.csv, stats.csv and, if requested, results.svg.
/// Returns the paths written.
std::vector<std::filesystem::path> emit_report(const ExperimentReport& report, ReportFormats formats,
                                               const std::filesystem::path& dir);

}  // namespace lmf

#endif  // LMF_EXPERIMENT_HPP_
