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

// landmark-frames: command-line front end.
//
//   landmark-frames synth --config synth.conf --out corpus/
//   landmark-frames annotate a.phn b.phn --out lm/
//   landmark-frames mask --alignment a.phn --strategy "regular:P=2,D=1"
//   landmark-frames transform --scores a.llm --strategy "landmark:keep|fill_0" --alignment a.phn --out b.llm
//   landmark-frames decode --scores a.llm --model transition.tm
//   landmark-frames score --ref ref.txt --hyp hyp.txt --out report/
//   landmark-frames stats --pairs pairs.csv
//   landmark-frames run --config exp.conf --out results/
//   landmark-frames sweep --config sweep.conf --out results/

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "lmf/error.hpp"
#include "lmf/experiment.hpp"
#include "lmf/scoring.hpp"

namespace fs = std::filesystem;
using namespace lmf;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string out;
  std::string format;
};

int resolve_jobs(const Common& c) {
  if (c.jobs) return std::max(1, *c.jobs);
  if (const char* env = std::getenv("LANDMARK_FRAMES_JOBS")) {
    auto v = parse_int(env);
    if (!v || *v < 1) fail(ErrorCode::kInvalidConfig, "LANDMARK_FRAMES_JOBS must be a positive integer");
    return static_cast<int>(*v);
  }
  return 1;
}

void add_common(CLI::App* app, Common& c, bool config) {
  if (config) app->add_option("--config", c.config, "key = value configuration file")->required();
  app->add_option("--seed", c.seed, "top-level random seed");
  app->add_option("--jobs", c.jobs, "worker threads (default: $LANDMARK_FRAMES_JOBS or 1)");
  app->add_option("--out", c.out, "output path");
}

void emit(const std::string& out, const std::string& data) {
  if (out.empty()) std::cout << data;
  else write_file_atomic(out, data);
}

struct TimingArgs {
  std::string unit = "frames";
  Index frame_shift = 160;
  std::string manners;
};

void add_timing(CLI::App* app, TimingArgs& t) {
  app->add_option("--unit", t.unit, "alignment time unit")->check(CLI::IsMember({"frames", "samples"}));
  app->add_option("--frame-shift", t.frame_shift, "samples per frame shift");
  app->add_option("--manners", t.manners, "phone manner table (default: TIMIT)");
}

PhoneAlignment load_alignment(const std::string& path, const TimingArgs& t) {
  FrameTiming timing;
  timing.frame_shift = t.frame_shift;
  timing.validate();
  return parse_alignment(read_file(path), timing, t.unit == "samples" ? TimeUnit::kSamples : TimeUnit::kFrames,
                         fs::path(path).stem().string());
}

MannerTable load_manners(const TimingArgs& t) {
  return t.manners.empty() ? MannerTable::timit() : read_manner_table(read_file(t.manners));
}

ExperimentConfig load_config(const Common& c) {
  const fs::path path(c.config);
  ExperimentConfig cfg = parse_experiment_config(read_file(path), path.parent_path());
  if (c.seed) {
    cfg.seed = *c.seed;
    if (cfg.synth && !cfg.cv_seed) cfg.cv_seed = cfg.fold_seed();
  }
  if (!c.out.empty()) cfg.out_dir = c.out;
  if (!c.format.empty()) cfg.formats = parse_formats(c.format);
  if (cfg.out_dir.empty()) fail(ErrorCode::kInvalidConfig, "no output directory (--out or out =)");
  return cfg;
}

void print_rows(const ExperimentReport& report) {
  std::cout << write_results_csv(report);
  for (const auto& e : report.errors) std::cerr << "row " << e.strategy << " failed: " << e.error << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landmark frame re-weighting and dropping experiments"};
  app.require_subcommand(1);

  Common common;
  TimingArgs timing;

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  add_common(synth, common, false);
  synth->add_option("--config", common.config, "synthetic corpus configuration");

  auto* annotate_cmd = app.add_subcommand("annotate", "label landmarks from phone alignments");
  std::vector<std::string> alignment_files;
  std::string mode = "boundary";
  Index radius = 0;
  bool no_merge = false;
  annotate_cmd->add_option("alignments", alignment_files, "alignment files")->required();
  annotate_cmd->add_option("--mode", mode)->check(CLI::IsMember({"boundary", "offset"}));
  annotate_cmd->add_option("--radius", radius, "widen radius for the frame fraction");
  annotate_cmd->add_flag("--no-merge-mc", no_merge, "keep closure/release pairs at manner changes");
  add_timing(annotate_cmd, timing);
  add_common(annotate_cmd, common, false);

  auto* mask_cmd = app.add_subcommand("mask", "build a drop mask and weights for one utterance");
  std::string spec_text, alignment_file, landmark_file, scores_file, model_file;
  Index frames = 0;
  mask_cmd->add_option("--strategy", spec_text)->required();
  mask_cmd->add_option("--frames", frames, "frame count when no alignment is given");
  mask_cmd->add_option("--alignment", alignment_file);
  mask_cmd->add_option("--landmarks", landmark_file);
  mask_cmd->add_option("--radius", radius);
  add_timing(mask_cmd, timing);
  add_common(mask_cmd, common, false);

  auto* transform_cmd = app.add_subcommand("transform", "apply a strategy to a score matrix");
  bool text_out = false;
  transform_cmd->add_option("--scores", scores_file)->required();
  transform_cmd->add_option("--strategy", spec_text)->required();
  transform_cmd->add_option("--alignment", alignment_file);
  transform_cmd->add_option("--landmarks", landmark_file);
  transform_cmd->add_option("--radius", radius);
  transform_cmd->add_flag("--text", text_out, "write the text matrix layout");
  add_timing(transform_cmd, timing);
  add_common(transform_cmd, common, false);

  auto* decode_cmd = app.add_subcommand("decode", "Viterbi-decode a score matrix");
  double beam = kNoBeam<double>;
  bool keep_silence = false;
  decode_cmd->add_option("--scores", scores_file)->required();
  decode_cmd->add_option("--model", model_file)->required();
  decode_cmd->add_option("--beam", beam);
  decode_cmd->add_flag("--keep-silence", keep_silence);
  add_common(decode_cmd, common, false);

  auto* score_cmd = app.add_subcommand("score", "phone error rate of hypotheses against references");
  std::vector<std::string> refs, hyps;
  score_cmd->add_option("--ref", refs, "reference phone sequence files")->required();
  score_cmd->add_option("--hyp", hyps, "hypothesis phone sequence files, paired with --ref")->required();
  add_common(score_cmd, common, false);

  auto* stats_cmd = app.add_subcommand("stats", "paired Wilcoxon and Welch t tests");
  std::string pairs_file;
  stats_cmd->add_option("--pairs", pairs_file, "CSV with columns a,b")->required();
  add_common(stats_cmd, common, false);

  auto* run_cmd = app.add_subcommand("run", "run every configured strategy");
  add_common(run_cmd, common, true);
  run_cmd->add_option("--format", common.format, "csv,svg");

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep over-weighting or drop rate");
  add_common(sweep_cmd, common, true);
  sweep_cmd->add_option("--format", common.format, "csv,svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const int jobs = resolve_jobs(common);

    auto landmark_source = [&](Index T) -> std::function<FrameSet(Index)> {
      LandmarkSet lms;
      if (!landmark_file.empty()) {
        lms = read_landmarks(read_file(landmark_file));
      } else if (!alignment_file.empty()) {
        lms = annotate(load_alignment(alignment_file, timing), load_manners(timing));
      }
      return [lms, T](Index r) { return landmark_frames(lms, r, T); };
    };
    auto realize_one = [&](Index T) {
      StrategyContext ctx;
      ctx.frames = T;
      ctx.default_radius = radius;
      ctx.seed = common.seed.value_or(1);
      ctx.landmarks = landmark_source(T);
      return realize(StrategySpec::parse(spec_text), ctx);
    };

    if (*synth) {
      std::vector<KeyValue> kvs;
      if (!common.config.empty()) kvs = parse_key_values(read_file(common.config));
      for (auto& kv : kvs)
        if (kv.key.rfind("synth.", 0) == 0) kv.key = kv.key.substr(6);
      SynthConfig cfg = parse_synth_config(kvs);
      if (common.seed) cfg.seed = *common.seed;
      if (common.out.empty()) fail(ErrorCode::kInvalidConfig, "synth needs --out");
      write_corpus(gen_corpus(cfg, jobs), common.out);
      write_file_atomic(fs::path(common.out) / "synth.conf", write_synth_config(cfg));
    } else if (*annotate_cmd) {
      AnnotationConfig acfg;
      acfg.mode = mode == "offset" ? AnnotationMode::kOffset : AnnotationMode::kBoundary;
      acfg.merge_mc = !no_merge;
      const MannerTable manners = load_manners(timing);
      std::string csv = "utterance_id,frames,landmark_frames,fraction\n";
      Index total_frames = 0, total_lm = 0;
      for (const auto& file : alignment_files) {
        const PhoneAlignment al = load_alignment(file, timing);
        const LandmarkSet lms = annotate(al, manners, acfg);
        const Index n = static_cast<Index>(landmark_frames(lms, radius, al.frames()).size());
        total_frames += al.frames();
        total_lm += n;
        csv += al.utterance_id + "," + std::to_string(al.frames()) + "," + std::to_string(n) + "," +
               format_double(static_cast<double>(n) / static_cast<double>(al.frames())) + "\n";
        if (!common.out.empty()) write_file_atomic(fs::path(common.out) / (al.utterance_id + ".lm"), write_landmarks(lms));
      }
      if (!common.out.empty()) write_file_atomic(fs::path(common.out) / "landmarks.csv", csv);
      std::cout << "utterances=" << alignment_files.size() << " frames=" << total_frames
                << " landmark_frames=" << total_lm << " landmark_fraction="
                << format_double(100.0 * static_cast<double>(total_lm) / static_cast<double>(total_frames)) << "%\n";
    } else if (*mask_cmd) {
      Index T = frames;
      if (!alignment_file.empty()) T = load_alignment(alignment_file, timing).frames();
      if (T < 1) fail(ErrorCode::kInvalidConfig, "mask needs --frames or --alignment");
      const RealizedStrategy r = realize_one(T);
      emit(common.out, write_mask(r.mask));
      std::cerr << "dropped " << r.mask.drop_count() << " of " << T << " frames ("
                << format_double(100.0 * r.mask.drop_rate()) << "%)\n";
    } else if (*transform_cmd) {
      const ScoreMatrix scores = read_score_matrix(read_file(scores_file), fs::path(scores_file).stem().string());
      const StrategySpec spec = StrategySpec::parse(spec_text);
      const RealizedStrategy r = realize_one(scores.frames());
      const ScoreMatrix out = transform_scores(scores, r, spec.replacement);
      if (common.out.empty() && !text_out) fail(ErrorCode::kInvalidConfig, "binary output needs --out");
      emit(common.out, text_out ? write_score_matrix_text(out) : write_score_matrix(out));
    } else if (*decode_cmd) {
      const ScoreMatrix scores = read_score_matrix(read_file(scores_file));
      const TransitionModel tm = read_transition_model(read_file(model_file));
      CollapseOptions collapse;
      collapse.drop_silence = !keep_silence;
      const DecodeResult d = viterbi(scores, tm, static_cast<const WeightVector*>(nullptr), beam, collapse);
      emit(common.out, write_phone_sequence(d.phones));
      std::cerr << "score " << format_double(d.score) << "\n";
    } else if (*score_cmd) {
      if (refs.size() != hyps.size()) fail(ErrorCode::kInvalidConfig, "--ref and --hyp counts differ");
      std::vector<ReportRow> rows;
      PERReport total;
      for (std::size_t i = 0; i < refs.size(); ++i) {
        PERReport r = align_edit(read_phone_sequence(read_file(refs[i])), read_phone_sequence(read_file(hyps[i])));
        total += r;
        rows.push_back({fs::path(refs[i]).stem().string(), std::move(r)});
      }
      if (!common.out.empty()) {
        write_file_atomic(fs::path(common.out) / "report.csv", write_report_csv(rows));
        write_file_atomic(fs::path(common.out) / "confusion.csv", write_confusion_csv(total));
      } else {
        std::cout << write_report_csv(rows);
      }
      std::cerr << "PER " << format_double(total.per()) << "% (N=" << total.n_ref << ")\n";
    } else if (*stats_cmd) {
      std::vector<std::pair<double, double>> pairs;
      std::vector<double> a, b;
      const std::string text = read_file(pairs_file);
      for (auto line : lines(text)) {
        auto cells = split(line, ',');
        if (cells.size() != 2) fail(ErrorCode::kParseError, "pairs file needs two columns");
        auto x = parse_double(trim(cells[0])), y = parse_double(trim(cells[1]));
        if (!x || !y) {
          if (pairs.empty() && a.empty()) continue;  // header
          fail(ErrorCode::kParseError, "non-numeric pair '" + std::string(line) + "'");
        }
        pairs.emplace_back(*x, *y);
        a.push_back(*x);
        b.push_back(*y);
      }
      std::vector<TestResult> results{wilcoxon_signed_rank(pairs), welch_t(a, b)};
      emit(common.out, write_stats_csv(results));
    } else if (*run_cmd) {
      const ExperimentConfig cfg = load_config(common);
      print_rows(run_experiment(cfg, jobs));
    } else if (*sweep_cmd) {
      const ExperimentConfig cfg = load_config(common);
      if (!cfg.sweep) fail(ErrorCode::kInvalidConfig, "config has no sweep.* keys");
      print_rows(sweep(cfg, jobs));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidConfig ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
