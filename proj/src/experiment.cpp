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

#include "lmf/experiment.hpp"

#include <algorithm>
#include <set>

#include "lmf/error.hpp"
#include "lmf/scoring.hpp"

namespace lmf {
namespace {

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

bool parse_bool(const KeyValue& kv) {
  if (kv.value == "true" || kv.value == "1" || kv.value == "yes") return true;
  if (kv.value == "false" || kv.value == "0" || kv.value == "no") return false;
  fail(ErrorCode::kInvalidConfig, "line " + std::to_string(kv.line) + ": " + kv.key + " must be true or false");
}

long long parse_config_int(const KeyValue& kv) {
  auto v = parse_int(kv.value);
  if (!v) fail(ErrorCode::kInvalidConfig, "line " + std::to_string(kv.line) + ": " + kv.key + " must be an integer");
  return *v;
}

double parse_config_real(const KeyValue& kv) {
  auto v = parse_double(kv.value);
  if (!v) fail(ErrorCode::kInvalidConfig, "line " + std::to_string(kv.line) + ": " + kv.key + " must be a number");
  return *v;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

bool has_overweight(const StrategySpec& spec) {
  return std::any_of(spec.terms.begin(), spec.terms.end(), [](const StrategyTerm& t) {
    return t.kind == StrategyTerm::Kind::kHybrid || t.kind == StrategyTerm::Kind::kWeight;
  });
}

const NamedStrategy* find_strategy(const ExperimentConfig& cfg, std::string_view name) {
  for (const auto& s : cfg.strategies)
    if (s.name == name) return &s;
  return nullptr;
}

PERReport fold_total(const std::vector<PERReport>& reports, const std::vector<Index>& members) {
  PERReport total;
  for (Index u : members) total += reports[static_cast<std::size_t>(u)];
  return total;
}

std::vector<double> fold_increments(const PreparedCorpus& data, const StrategyOutcome& baseline,
                                    const StrategyOutcome& outcome) {
  const FoldSpec& folds = *data.folds;
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(folds.k));
  const auto& als = data.corpus.alignments;
  for (std::size_t u = 0; u < als.size(); ++u) {
    const std::string& spk = als[u].speaker_id.empty() ? als[u].utterance_id : als[u].speaker_id;
    int f = folds.fold_of(spk);
    if (f >= 0) members[static_cast<std::size_t>(f)].push_back(static_cast<Index>(u));
  }
  std::vector<double> out;
  for (const auto& m : members) {
    const double base = fold_total(baseline.reports, m).per();
    const double sys = fold_total(outcome.reports, m).per();
    out.push_back(per_increment(base, sys));
  }
  return out;
}

std::string sanitize(std::string_view label) {
  std::string out(label);
  for (char& c : out)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) c = '_';
  return out;
}

ReportRowSummary empty_row(std::string name) {
  ReportRowSummary row;
  row.strategy = std::move(name);
  return row;
}

ReportRowSummary baseline_row(const PreparedCorpus& data, const StrategyOutcome& baseline,
                              std::vector<RowError>& errors) {
  ReportRowSummary row = empty_row(std::string(kBaselineName));
  row.drop_rate = baseline.drop_rate();
  row.per = baseline.total.per();
  try {
    row = summarize_outcome(data, baseline, baseline, baseline);
  } catch (const Error& e) {
    errors.push_back({row.strategy, e.what()});
  }
  return row;
}

std::optional<double> mean_of(const std::vector<ReportRowSummary>& rows,
                              std::optional<double> ReportRowSummary::*field) {
  double sum = 0.0;
  for (const auto& r : rows) {
    if (!(r.*field)) return std::nullopt;
    sum += *(r.*field);
  }
  return sum / static_cast<double>(rows.size());
}

}  // namespace

std::string_view to_string(SweepParameter p) {
  return p == SweepParameter::kOverweight ? "overweight" : "drop_rate";
}

ReportFormats parse_formats(std::string_view text) {
  ReportFormats f;
  for (auto part : split(text, ',')) {
    auto t = trim(part);
    if (t == "csv") f.csv = true;
    else if (t == "svg") f.svg = true;
    else fail(ErrorCode::kInvalidConfig, "unknown report format '" + std::string(t) + "'");
  }
  f.csv = true;
  return f;
}

void ExperimentConfig::validate() const {
  if (corpus_dir.has_value() == synth.has_value())
    fail(ErrorCode::kInvalidConfig, "exactly one corpus source (corpus_dir or synth.*) is required");
  std::set<std::string, std::less<>> seen{std::string(kBaselineName)};
  for (const auto& s : strategies) {
    if (!valid_name(s.name) || s.name == kBaselineName)
      fail(ErrorCode::kInvalidConfig, "invalid strategy name '" + s.name + "'");
    for (const auto& dep : s.spec.dependencies())
      if (!seen.contains(dep) || dep == kBaselineName)
        fail(ErrorCode::kInvalidConfig, "strategy '" + s.name + "' matches '" + dep + "', which is not defined before it");
    if (!seen.insert(s.name).second) fail(ErrorCode::kInvalidConfig, "duplicate strategy '" + s.name + "'");
  }
  for (const auto& s : strategies)
    if (!seen.contains(s.compare))
      fail(ErrorCode::kInvalidConfig, "strategy '" + s.name + "' compares against unknown '" + s.compare + "'");
  if (overweight && !(*overweight >= 0.0)) fail(ErrorCode::kInvalidConfig, "overweight must be >= 0");
  if (annotation.widen_radius < 0) fail(ErrorCode::kInvalidConfig, "widen_radius must be >= 0");
  if (cv_k != 0 && cv_k < 2) fail(ErrorCode::kInvalidConfig, "cv_k must be 0 or >= 2");
  if (repeats < 1) fail(ErrorCode::kInvalidConfig, "repeats must be >= 1");
  if (!(beam > 0.0)) fail(ErrorCode::kInvalidConfig, "beam must be > 0");
  load.timing.validate();
  if (sweep) {
    if (!find_strategy(*this, sweep->strategy))
      fail(ErrorCode::kInvalidConfig, "sweep strategy '" + sweep->strategy + "' is not defined");
    if (sweep->values.empty()) fail(ErrorCode::kInvalidConfig, "sweep needs at least one value");
  }
}

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::vector<KeyValue> synth_kvs;
  std::vector<KeyValue> compares;
  for (const auto& kv : parse_key_values(text)) {
    const std::string& k = kv.key;
    auto bad = [&](const std::string& what) {
      fail(ErrorCode::kInvalidConfig, "line " + std::to_string(kv.line) + ": " + what);
    };
    if (k == "corpus_dir") {
      cfg.corpus_dir = resolve(base_dir, kv.value);
    } else if (k.rfind("synth.", 0) == 0) {
      synth_kvs.push_back(kv);
    } else if (k == "unit") {
      if (kv.value == "frames") cfg.load.unit = TimeUnit::kFrames;
      else if (kv.value == "samples") cfg.load.unit = TimeUnit::kSamples;
      else bad("unit must be frames or samples");
    } else if (k == "sample_rate") {
      cfg.load.timing.sample_rate = static_cast<Index>(parse_config_int(kv));
    } else if (k == "frame_length") {
      cfg.load.timing.frame_length = static_cast<Index>(parse_config_int(kv));
    } else if (k == "frame_shift") {
      cfg.load.timing.frame_shift = static_cast<Index>(parse_config_int(kv));
    } else if (k == "manners") {
      cfg.manners_path = resolve(base_dir, kv.value);
    } else if (k == "fold") {
      cfg.collapse.folding = read_folding_table(read_file(resolve(base_dir, kv.value)));
    } else if (k == "drop_silence") {
      cfg.collapse.drop_silence = parse_bool(kv);
    } else if (k.rfind("strategy.", 0) == 0) {
      NamedStrategy s;
      s.name = k.substr(9);
      s.spec = StrategySpec::parse(kv.value);
      cfg.strategies.push_back(std::move(s));
    } else if (k.rfind("compare.", 0) == 0) {
      compares.push_back(kv);
    } else if (k == "overweight") {
      cfg.overweight = parse_config_real(kv);
    } else if (k == "widen_radius") {
      cfg.annotation.widen_radius = static_cast<Index>(parse_config_int(kv));
    } else if (k == "annotation_mode") {
      if (kv.value == "boundary") cfg.annotation.mode = AnnotationMode::kBoundary;
      else if (kv.value == "offset") cfg.annotation.mode = AnnotationMode::kOffset;
      else bad("annotation_mode must be boundary or offset");
    } else if (k == "merge_mc") {
      cfg.annotation.merge_mc = parse_bool(kv);
    } else if (k == "cv_k") {
      cfg.cv_k = static_cast<int>(parse_config_int(kv));
    } else if (k == "cv_seed" || k == "seed") {
      const long long v = parse_config_int(kv);
      if (v < 0) bad(k + " must be >= 0");
      (k == "seed" ? cfg.seed : cfg.cv_seed.emplace()) = static_cast<std::uint64_t>(v);
    } else if (k == "repeats") {
      cfg.repeats = static_cast<int>(parse_config_int(kv));
    } else if (k == "beam") {
      cfg.beam = kv.value == "inf" ? kNoBeam<double> : parse_config_real(kv);
    } else if (k == "model_tag") {
      cfg.model_tag = kv.value;
    } else if (k == "sweep.strategy") {
      if (!cfg.sweep) cfg.sweep.emplace();
      cfg.sweep->strategy = kv.value;
    } else if (k == "sweep.parameter") {
      if (!cfg.sweep) cfg.sweep.emplace();
      if (kv.value == "overweight") cfg.sweep->parameter = SweepParameter::kOverweight;
      else if (kv.value == "drop_rate") cfg.sweep->parameter = SweepParameter::kDropRate;
      else bad("sweep.parameter must be overweight or drop_rate");
    } else if (k == "sweep.values") {
      if (!cfg.sweep) cfg.sweep.emplace();
      cfg.sweep->values.clear();
      for (auto part : split(kv.value, ',')) {
        auto t = trim(part);
        if (t.empty()) continue;
        auto v = parse_double(t);
        if (!v) bad("sweep.values must be numbers");
        cfg.sweep->values.push_back(*v);
      }
    } else if (k == "out") {
      cfg.out_dir = resolve(base_dir, kv.value);
    } else if (k == "format") {
      cfg.formats = parse_formats(kv.value);
    } else {
      bad("unknown key '" + k + "'");
    }
  }
  if (!synth_kvs.empty()) cfg.synth = parse_synth_config(synth_kvs, "synth.");
  for (const auto& kv : compares) {
    const std::string name = kv.key.substr(8);
    auto it = std::find_if(cfg.strategies.begin(), cfg.strategies.end(),
                           [&](const NamedStrategy& s) { return s.name == name; });
    if (it == cfg.strategies.end())
      fail(ErrorCode::kInvalidConfig, "line " + std::to_string(kv.line) + ": compare for unknown strategy '" + name + "'");
    it->compare = kv.value;
  }
  if (cfg.overweight)
    for (auto& s : cfg.strategies)
      if (has_overweight(s.spec)) s.spec.set_overweight(*cfg.overweight);
  cfg.validate();
  return cfg;
}

PreparedCorpus prepare_corpus(const ExperimentConfig& cfg, int jobs) {
  cfg.validate();
  Corpus corpus = cfg.corpus_dir ? load_corpus(*cfg.corpus_dir, cfg.load) : gen_corpus(*cfg.synth, jobs);
  return prepare_corpus(std::move(corpus), cfg, jobs);
}

PreparedCorpus prepare_corpus(Corpus corpus, const ExperimentConfig& cfg, int jobs) {
  PreparedCorpus data;
  data.corpus = std::move(corpus);
  if (cfg.manners_path) data.corpus.manners = read_manner_table(read_file(*cfg.manners_path));
  data.corpus.validate();
  if (data.corpus.scores.size() != data.corpus.alignments.size())
    fail(ErrorCode::kShapeError, "corpus has no score matrices");
  const auto n = static_cast<Index>(data.corpus.alignments.size());
  if (n == 0) fail(ErrorCode::kEmptyInput, "corpus has no utterances");
  data.landmarks.resize(static_cast<std::size_t>(n));
  data.references.resize(static_cast<std::size_t>(n));
  parallel_for(n, jobs, [&](Index u) {
    const auto& al = data.corpus.alignments[static_cast<std::size_t>(u)];
    data.landmarks[static_cast<std::size_t>(u)] = annotate(al, data.corpus.manners, cfg.annotation);
    data.references[static_cast<std::size_t>(u)] = reference_phones(al, cfg.collapse);
  });
  if (cfg.cv_k > 0) {
    std::vector<Speaker> speakers;
    std::set<std::string> seen;
    for (const auto& al : data.corpus.alignments) {
      const std::string& id = al.speaker_id.empty() ? al.utterance_id : al.speaker_id;
      if (seen.insert(id).second) speakers.push_back({id, al.gender});
    }
    data.folds = cv_folds(std::move(speakers), cfg.cv_k, cfg.fold_seed());
  }
  return data;
}

double StrategyOutcome::drop_rate() const {
  return frames == 0 ? 0.0 : 100.0 * static_cast<double>(dropped) / static_cast<double>(frames);
}

StrategyOutcome evaluate_strategy(const PreparedCorpus& data, const ExperimentConfig& cfg,
                                  const std::string& name, const StrategySpec& spec,
                                  std::uint64_t seed,
                                  const std::vector<const StrategyOutcome*>& matched, int jobs) {
  const Corpus& corpus = data.corpus;
  const auto n = corpus.alignments.size();
  StrategyOutcome out;
  out.name = name;
  out.spec = spec.to_string();
  out.masks.resize(n);
  out.checksums.resize(n);
  out.decodes.resize(n);
  out.reports.resize(n);

  parallel_for(static_cast<Index>(n), jobs, [&](Index u) {
    const auto i = static_cast<std::size_t>(u);
    const ScoreMatrix& scores = corpus.scores[i];
    StrategyContext ctx;
    ctx.frames = scores.frames();
    ctx.default_radius = cfg.annotation.widen_radius;
    ctx.seed = derive_seed(seed, static_cast<std::uint64_t>(u));
    ctx.landmarks = [&](Index r) { return landmark_frames(data.landmarks[i], r, scores.frames()); };
    ctx.matched_count = [&](const std::string& other) -> Index {
      for (const auto* m : matched)
        if (m && m->name == other) return m->masks[i].drop_count();
      fail(ErrorCode::kInvalidConfig, "no evaluated strategy named '" + other + "' to match");
    };
    RealizedStrategy realized = realize(spec, ctx);
    ScoreMatrix transformed = transform_scores(scores, realized, spec.replacement);
    out.checksums[i] = fnv1a64(write_score_matrix(transformed));
    out.decodes[i] = viterbi(transformed, corpus.model, static_cast<const WeightVector*>(nullptr), cfg.beam, cfg.collapse);
    out.reports[i] = align_edit(data.references[i], out.decodes[i].phones);
    out.masks[i] = std::move(realized.mask);
  });
  for (std::size_t i = 0; i < n; ++i) {
    out.total += out.reports[i];
    out.dropped += out.masks[i].drop_count();
    out.frames += out.masks[i].frames();
  }
  return out;
}

StrategyOutcome evaluate_baseline(const PreparedCorpus& data, const ExperimentConfig& cfg, int jobs) {
  return evaluate_strategy(data, cfg, std::string(kBaselineName), StrategySpec::parse("identity"), cfg.seed,
                           {}, jobs);
}

ReportRowSummary summarize_outcome(const PreparedCorpus& data, const StrategyOutcome& baseline,
                                   const StrategyOutcome& outcome, const StrategyOutcome& partner,
                                   std::vector<TestResult>* tests) {
  ReportRowSummary row = empty_row(outcome.name);
  row.drop_rate = outcome.drop_rate();
  row.per = outcome.total.per();
  row.delta_per = per_increment(baseline.total.per(), *row.per);
  const bool self = &outcome == &partner;

  if (data.folds) {
    const auto inc = fold_increments(data, baseline, outcome);
    const Summary s = summarize_cv(inc);
    row.mean = s.mean;
    row.stdev = s.stdev;
    if (!self) {
      const auto other = fold_increments(data, baseline, partner);
      TestResult t = welch_t(inc, other);
      t.name = "welch_t:" + outcome.name + "~" + partner.name;
      if (!t.degenerate) row.p_t = t.p;
      if (tests) tests->push_back(t);
    }
  } else {
    row.mean = row.delta_per;
  }

  if (!self) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(outcome.reports.size());
    for (std::size_t i = 0; i < outcome.reports.size(); ++i)
      pairs.emplace_back(static_cast<double>(outcome.reports[i].errors()),
                         static_cast<double>(partner.reports[i].errors()));
    TestResult w = wilcoxon_signed_rank(pairs);
    w.name = "wilcoxon:" + outcome.name + "~" + partner.name;
    if (!w.degenerate) row.p_wilcoxon = w.p;
    if (tests) tests->push_back(w);
  }
  return row;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, int jobs) {
  return run_experiment(cfg, prepare_corpus(cfg, jobs), jobs);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const PreparedCorpus& data, int jobs) {
  cfg.validate();
  ExperimentReport report;
  report.seed = cfg.seed;
  report.model_tag = cfg.model_tag;

  const StrategyOutcome baseline = evaluate_baseline(data, cfg, jobs);
  report.baseline_per = baseline.total.per();
  report.rows.push_back(baseline_row(data, baseline, report.errors));

  std::vector<std::optional<StrategyOutcome>> outcomes;
  std::vector<const StrategyOutcome*> done{&baseline};
  outcomes.reserve(cfg.strategies.size());
  for (const auto& s : cfg.strategies) {
    try {
      outcomes.emplace_back(evaluate_strategy(data, cfg, s.name, s.spec, cfg.seed, done, jobs));
    } catch (const Error& e) {
      outcomes.emplace_back();
      report.errors.push_back({s.name, e.what()});
    }
    if (outcomes.back()) done.push_back(&*outcomes.back());
  }

  for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
    const auto& s = cfg.strategies[i];
    if (!outcomes[i]) {
      report.rows.push_back(empty_row(s.name));
      continue;
    }
    const StrategyOutcome* partner = nullptr;
    for (const auto* d : done)
      if (d->name == s.compare) partner = d;
    try {
      if (!partner) fail(ErrorCode::kInvalidConfig, "comparison strategy '" + s.compare + "' failed");
      report.rows.push_back(summarize_outcome(data, baseline, *outcomes[i], *partner, &report.tests));
    } catch (const Error& e) {
      ReportRowSummary row = empty_row(s.name);
      row.drop_rate = outcomes[i]->drop_rate();
      row.per = outcomes[i]->total.per();
      report.rows.push_back(row);
      report.errors.push_back({s.name, e.what()});
    }
  }

  if (!cfg.out_dir.empty()) {
    const auto root = cfg.out_dir / "strategies";
    persist_outcome(baseline, data, baseline, root / std::string(kBaselineName));
    for (const auto& o : outcomes)
      if (o) persist_outcome(*o, data, baseline, root / sanitize(o->name));
    emit_report(report, cfg.formats, cfg.out_dir);
  }
  return report;
}

ExperimentReport sweep(const ExperimentConfig& cfg, int jobs) {
  if (cfg.sweep && cfg.sweep->values.empty())
    fail(ErrorCode::kInvalidConfig, "sweep needs at least one value");
  return sweep(cfg, prepare_corpus(cfg, jobs), jobs);
}

ExperimentReport sweep(const ExperimentConfig& cfg, const PreparedCorpus& data, int jobs) {
  if (!cfg.sweep) fail(ErrorCode::kInvalidConfig, "no sweep configured");
  cfg.validate();
  const SweepConfig& sw = *cfg.sweep;
  const NamedStrategy& target = *find_strategy(cfg, sw.strategy);

  // Strategies the swept one depends on, in config order.
  std::set<std::string> needed;
  for (const auto& d : target.spec.dependencies()) needed.insert(d);
  if (target.compare != kBaselineName && target.compare != target.name) needed.insert(target.compare);
  for (auto it = cfg.strategies.rbegin(); it != cfg.strategies.rend(); ++it)
    if (needed.contains(it->name))
      for (const auto& d : it->spec.dependencies()) needed.insert(d);
  std::vector<const NamedStrategy*> support;
  for (const auto& s : cfg.strategies)
    if (needed.contains(s.name) && s.name != target.name) support.push_back(&s);

  std::vector<StrategySpec> specs;
  for (double v : sw.values) {
    StrategySpec spec = target.spec;
    if (sw.parameter == SweepParameter::kOverweight) spec.set_overweight(v);
    else spec.set_drop_rate(v);
    specs.push_back(std::move(spec));
  }

  ExperimentReport report;
  report.kind = "sweep";
  report.seed = cfg.seed;
  report.model_tag = cfg.model_tag;
  report.parameter = sw.parameter;

  const StrategyOutcome baseline = evaluate_baseline(data, cfg, jobs);
  report.baseline_per = baseline.total.per();
  if (!cfg.out_dir.empty())
    persist_outcome(baseline, data, baseline, cfg.out_dir / "strategies" / std::string(kBaselineName));

  for (std::size_t vi = 0; vi < sw.values.size(); ++vi) {
    const std::string label = target.name + "@" + std::string(to_string(sw.parameter)) + "=" +
                              format_double(sw.values[vi]);
    bool stochastic = specs[vi].stochastic();
    for (const auto* s : support) stochastic = stochastic || s->spec.stochastic();
    const int reps = stochastic ? cfg.repeats : 1;
    std::vector<ReportRowSummary> rows;
    try {
      for (int r = 0; r < reps; ++r) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
        std::vector<StrategyOutcome> support_out;
        support_out.reserve(support.size());
        std::vector<const StrategyOutcome*> done{&baseline};
        for (const auto* s : support) {
          support_out.push_back(evaluate_strategy(data, cfg, s->name, s->spec, seed, done, jobs));
          done.push_back(&support_out.back());
        }
        StrategyOutcome out = evaluate_strategy(data, cfg, label, specs[vi], seed, done, jobs);
        const StrategyOutcome* partner = &out;
        for (const auto* d : done)
          if (d->name == target.compare) partner = d;
        rows.push_back(summarize_outcome(data, baseline, out, *partner));
        if (r == 0 && !cfg.out_dir.empty())
          persist_outcome(out, data, baseline, cfg.out_dir / "strategies" / sanitize(label));
      }
      ReportRowSummary row = empty_row(label);
      row.drop_rate = mean_of(rows, &ReportRowSummary::drop_rate);
      row.per = mean_of(rows, &ReportRowSummary::per);
      row.delta_per = mean_of(rows, &ReportRowSummary::delta_per);
      row.mean = mean_of(rows, &ReportRowSummary::mean);
      row.stdev = mean_of(rows, &ReportRowSummary::stdev);
      row.p_wilcoxon = mean_of(rows, &ReportRowSummary::p_wilcoxon);
      row.p_t = mean_of(rows, &ReportRowSummary::p_t);
      row.x = sw.values[vi];
      report.rows.push_back(row);
    } catch (const Error& e) {
      ReportRowSummary row = empty_row(label);
      row.x = sw.values[vi];
      report.rows.push_back(row);
      report.errors.push_back({label, e.what()});
    }
  }
  if (!cfg.out_dir.empty()) emit_report(report, cfg.formats, cfg.out_dir);
  return report;
}

void persist_outcome(const StrategyOutcome& outcome, const PreparedCorpus& data,
                     const StrategyOutcome& baseline, const std::filesystem::path& dir) {
  const auto& als = data.corpus.alignments;
  std::string checksums = "utterance_id,fnv1a64\n";
  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < als.size(); ++i) {
    const std::string& id = als[i].utterance_id;
    write_file_atomic(dir / "masks" / (id + ".mask"), write_mask(outcome.masks[i]));
    write_file_atomic(dir / "hyp" / (id + ".txt"), write_phone_sequence(outcome.decodes[i].phones));
    checksums += id + "," + hex64(outcome.checksums[i]) + "\n";
    rows.push_back({id, outcome.reports[i]});
  }
  write_file_atomic(dir / "checksums.csv", checksums);
  write_file_atomic(dir / "report.csv", write_report_csv(rows));
  write_file_atomic(dir / "confusion.csv", write_confusion_csv(outcome.total));
  write_file_atomic(dir / "strategy.txt", outcome.spec + "\n");
  if (&outcome != &baseline) {
    std::map<std::string, std::string> grouping;
    for (const auto& [phone, manner] : data.corpus.manners.entries())
      grouping[phone] = std::string(to_string(manner));
    const auto table = normalized_error_increment(baseline.total, outcome.total,
                                                  reference_occurrences(baseline.total), grouping);
    write_file_atomic(dir / "increments.csv", write_increment_csv(table));
  }
}

}  // namespace lmf
