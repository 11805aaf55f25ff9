// cli/pipelines.cc

// Copyright 2026  The rntm Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cli/pipelines.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "base/binary-io.h"
#include "base/rntm-common.h"
#include "emotion/emotion-tags.h"
#include "emotion/model-selection.h"
#include "lid/gating.h"
#include "lid/lid-trainer.h"
#include "metrics/detection.h"
#include "nnet/rng.h"
#include "synth/generator.h"
#include "transducer/trainer.h"

namespace rntm {

namespace {

// Random streams of the training stages. The SER stream does not depend on
// the run name, so tagged and untagged runs see identical batch orders.
constexpr uint64_t kAsrStream = 0xa5a5;
constexpr uint64_t kSerStream = 0x5e4;
constexpr uint64_t kSerExtendStream = 0x5e5;
constexpr uint64_t kLidInitStream = 0x11d0;

std::string OutPath(const RunContext &ctx, const std::string &file) {
  std::filesystem::create_directories(ctx.out_dir);
  return (std::filesystem::path(ctx.out_dir) / file).string();
}

std::string Percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
  return buf;
}

void WriteText(const std::string &path, const std::string &text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  WriteFileBytes(path, text);
}

TrainStepOptions StepOptions(const OptimizerConfig &o, int threads) {
  TrainStepOptions s;
  s.learning_rate = o.learning_rate;
  s.clip_norm = o.clip_norm;
  s.num_threads = threads;
  return s;
}

std::vector<LidExample> LidExamples(const std::vector<FeatureSequence> &utts) {
  std::vector<LidExample> out;
  out.reserve(utts.size());
  for (const auto &u : utts) out.push_back({u.utt_id, &u.features, u.language});
  return out;
}

void CheckLanguages(const LidClassifier &clf, const CorpusManifest &manifest) {
  RNTM_REQUIRE(clf.languages() == manifest.languages,
               "LID classifier languages do not match the corpus");
}

}  // namespace

// ---------------------------------------------------------------- reports

std::string RunContext::ReproLine() const {
  return "config_hash=" + config.Hash() + " seed=" + std::to_string(config.seed) +
         " command=" + command;
}

void RunReport::Add(const std::string &key, const std::string &value) {
  rows_.emplace_back(key, value);
}

void RunReport::Add(const std::string &key, double value) { Add(key, FormatDouble(value)); }

std::string RunReport::Get(const std::string &key) const {
  for (const auto &[k, v] : rows_)
    if (k == key) return v;
  return "";
}

void RunReport::Write(const std::string &path, const RunContext &ctx) const {
  std::ostringstream os;
  os << "key,value\n";
  for (const auto &[k, v] : rows_) os << CsvEscape(k) << ',' << CsvEscape(v) << '\n';
  os << "# " << ctx.ReproLine() << '\n';
  WriteText(path, os.str());
}

RunReport ReadRunReport(const std::string &path) {
  std::istringstream is(ReadFileBytes(path));
  RunReport r;
  std::string line;
  std::getline(is, line);
  RNTM_REQUIRE(line == "key,value", path << ": not a run report");
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = CsvSplit(line);
    RNTM_REQUIRE(f.size() == 2, path << ": malformed report line");
    r.Add(f[0], f[1]);
  }
  return r;
}

// ---------------------------------------------------------------- helpers

Vocab AsrBaseVocab(const CorpusManifest &manifest) {
  std::vector<std::string> symbols = {"<blank>"};
  symbols.insert(symbols.end(), manifest.symbols.begin(), manifest.symbols.end());
  return Vocab(symbols, 0);
}

void CheckVocabCompatible(const RnntModel &model, const CorpusManifest &manifest) {
  const Vocab base = AsrBaseVocab(manifest);
  const Vocab &v = model.vocab();
  bool ok = v.blank_id() == base.blank_id() && v.Size() >= base.Size();
  for (int i = 0; ok && i < base.Size(); ++i) ok = v.Symbol(i) == base.Symbol(i);
  for (int i = base.Size(); ok && i < v.Size(); ++i) ok = v.IsTag(i);
  RNTM_REQUIRE(ok, "model vocabulary is incompatible with the corpus symbols");
  RNTM_REQUIRE(model.config().feature_dim == manifest.feature_dim,
               "model expects " << model.config().feature_dim << "-dim features, corpus has "
                                << manifest.feature_dim);
}

std::vector<int> TargetIds(const FeatureSequence &u, const CorpusManifest &manifest,
                           const Vocab &vocab) {
  std::vector<int> ids;
  ids.reserve(u.transcript.size());
  for (int s : u.transcript) {
    RNTM_REQUIRE(s >= 0 && s < static_cast<int>(manifest.symbols.size()),
                 u.utt_id << ": transcript id " << s << " outside the symbol list");
    ids.push_back(vocab.IdOf(manifest.symbols[s]));
  }
  return ids;
}

std::string HypothesisText(const std::vector<int> &ids, const Vocab &vocab) {
  std::string out;
  for (int id : ids)
    if (!vocab.IsTag(id) && id != vocab.blank_id()) out += vocab.Symbol(id);
  return out;
}

AsrEvaluation EvaluateAsr(const RnntModel &model, const std::vector<FeatureSequence> &utts,
                          const CorpusManifest &manifest, int max_symbols_per_frame,
                          int num_threads) {
  RNTM_REQUIRE(!utts.empty(), "EvaluateAsr: no utterances");
  const Vocab &v = model.vocab();
  AsrEvaluation ev;
  ev.rows.resize(utts.size());
  std::vector<ErrorCounts> chars(utts.size()), words(utts.size());
  ParallelFor(static_cast<int>(utts.size()), num_threads, [&](int i) {
    const FeatureSequence &u = utts[i];
    const std::vector<int> hyp = model.GreedyDecode(model.Encode(u.features), max_symbols_per_frame);
    EvalRow &row = ev.rows[i];
    row.utt_id = u.utt_id;
    row.ref = TranscriptText(manifest.symbols, u.transcript);
    row.hyp = HypothesisText(hyp, v);
    chars[i] = CharErrors(row.ref, row.hyp);
    words[i] = WordErrors(row.ref, row.hyp);
    row.cer = chars[i].Rate();
    row.wer = words[i].Rate();
    row.true_emotion = manifest.emotions.at(u.emotion);
    row.pred_emotion = ExtractEmotion(hyp, v);
  });
  int hits = 0;
  for (size_t i = 0; i < utts.size(); ++i) {
    ev.chars += chars[i];
    ev.words += words[i];
    hits += ev.rows[i].true_emotion == ev.rows[i].pred_emotion;
  }
  ev.emotion_accuracy = static_cast<double>(hits) / utts.size();
  return ev;
}

// ---------------------------------------------------------------- gen-data

RunReport RunGenData(const RunContext &ctx, std::ostream &log) {
  const CorpusSpec spec = BuildCorpusSpec(ctx.config.corpus, ctx.config.seed);
  const CorpusManifest m = GenerateCorpus(spec, ctx.data_dir);
  RunReport r;
  for (const auto &s : m.splits) {
    r.Add(s.name + ".count", s.count);
    r.Add(s.name + ".checksum", s.checksum);
  }
  r.Write((std::filesystem::path(ctx.data_dir) / "gen-data-report.csv").string(), ctx);
  log << "gen-data: wrote " << m.splits.size() << " splits to " << ctx.data_dir << '\n';
  return r;
}

// ---------------------------------------------------------------- train-asr

RunReport RunTrainAsr(const RunContext &ctx, const std::string &name, std::ostream &log) {
  const CorpusManifest manifest = ReadManifest(ctx.data_dir);
  const auto train = LoadSplit(ctx.data_dir, manifest, "train");
  const auto dev = LoadSplit(ctx.data_dir, manifest, "dev");
  RnntConfig mc = ctx.config.model;
  mc.feature_dim = manifest.feature_dim;
  RnntModel model(mc, AsrBaseVocab(manifest), ctx.config.seed);

  std::vector<TrainingExample> examples;
  for (const auto &u : train) examples.push_back({&u.features, TargetIds(u, manifest, model.vocab())});
  const OptimizerConfig &opt = ctx.config.asr.opt;
  const TrainStepOptions step = StepOptions(opt, ctx.num_threads);
  Rng rng = Rng::Derive(ctx.config.seed, kAsrStream);

  std::ostringstream hist;
  hist << "epoch,train_loss,dev_cer\n";
  RnntModel best = model;
  int best_epoch = 0;
  double best_cer = 0.0;
  for (int epoch = 1; epoch <= opt.epochs; ++epoch) {
    const double loss = TrainEpoch(&model, examples, opt.batch_size, &rng, step);
    const AsrEvaluation ev =
        EvaluateAsr(model, dev, manifest, ctx.config.decode.max_symbols_per_frame, ctx.num_threads);
    const double cer = ev.chars.Rate();
    hist << epoch << ',' << FormatDouble(loss) << ',' << FormatDouble(cer) << '\n';
    if (best_epoch == 0 || cer < best_cer) {
      best = model;
      best_epoch = epoch;
      best_cer = cer;
    }
    log << "train-asr: epoch " << epoch << " loss " << loss << " dev CER " << Percent(cer) << "%\n";
  }
  best.Save(OutPath(ctx, name + ".ckpt"));
  WriteText(OutPath(ctx, name + "-history.csv"), hist.str());
  RunReport r;
  r.Add("checkpoint", name + ".ckpt");
  r.Add("selected_epoch", best_epoch);
  r.Add("dev_cer_pct", Percent(best_cer));
  r.Add("param_checksum", HexU64(best.params().Checksum()));
  r.Write(OutPath(ctx, name + "-report.csv"), ctx);
  return r;
}

// ---------------------------------------------------------------- train-ser

RunReport RunTrainSer(const RunContext &ctx, const SerOptions &opts, std::ostream &log) {
  RNTM_REQUIRE(!opts.base_checkpoint.empty(), "train-ser: a base checkpoint is required");
  const CorpusManifest manifest = ReadManifest(ctx.data_dir);
  const auto train = LoadSplit(ctx.data_dir, manifest, "train");
  const auto dev = LoadSplit(ctx.data_dir, manifest, "dev");
  const SerStageConfig &cfg = ctx.config.ser;
  RNTM_REQUIRE(std::find(manifest.emotions.begin(), manifest.emotions.end(), kNeutral) !=
                   manifest.emotions.end(),
               "train-ser: the corpus has no " << kNeutral << " class");

  RnntModel model = RnntModel::Load(opts.base_checkpoint);
  CheckVocabCompatible(model, manifest);
  if (opts.tags) {
    std::vector<EmotionLabel> tagged;
    for (const auto &e : manifest.emotions)
      if (cfg.tag_neutral || e != kNeutral) tagged.push_back(e);
    if (model.vocab().tag_ids().empty())
      model.ExtendVocab(ExtendVocabWithEmotions(model.vocab(), tagged),
                        Rng::Derive(ctx.config.seed, kSerExtendStream).NextU64());
  }
  const std::vector<std::string> freeze = opts.freeze.value_or(cfg.freeze);
  model.params().ApplyFreezePatterns(freeze);
  const uint64_t encoder_before = model.params().Checksum("encoder.*");

  std::vector<TrainingExample> examples;
  for (const auto &u : train) {
    std::vector<int> target = TargetIds(u, manifest, model.vocab());
    const std::string &label = manifest.emotions.at(u.emotion);
    if (opts.tags && (cfg.tag_neutral || label != kNeutral))
      target = AugmentTarget(target, label, model.vocab());
    examples.push_back({&u.features, std::move(target)});
  }
  const int epochs = opts.epochs.value_or(cfg.opt.epochs);
  RNTM_REQUIRE(epochs >= 1, "train-ser: epochs must be >= 1");
  const TrainStepOptions step = StepOptions(cfg.opt, ctx.num_threads);
  Rng rng = Rng::Derive(ctx.config.seed, kSerStream);

  std::ostringstream hist;
  hist << "epoch,train_loss,dev_emotion_accuracy,dev_cer\n";
  TrainingHistory history;
  RnntModel best = model;
  double best_cer = 0.0;
  int epochs_run = 0;
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    const double loss = TrainEpoch(&model, examples, cfg.opt.batch_size, &rng, step);
    const AsrEvaluation ev =
        EvaluateAsr(model, dev, manifest, ctx.config.decode.max_symbols_per_frame, ctx.num_threads);
    epochs_run = epoch;
    hist << epoch << ',' << FormatDouble(loss) << ',' << FormatDouble(ev.emotion_accuracy) << ','
         << FormatDouble(ev.chars.Rate()) << '\n';
    log << opts.name << ": epoch " << epoch << " loss " << loss << " dev emotion "
        << Percent(ev.emotion_accuracy) << "% dev CER " << Percent(ev.chars.Rate()) << "%\n";
    const size_t before = history.empty() ? 0 : history.BestIndex();
    history.Add({epoch, ev.emotion_accuracy, "epoch-" + std::to_string(epoch)});
    // Without tags there is no emotion signal to select on; keep the last epoch.
    if (!opts.tags || history.size() == 1 || history.BestIndex() != before) {
      best = model;
      best_cer = ev.chars.Rate();
    }
    if (opts.tags && history.ShouldStop(cfg.patience)) break;
  }
  const int selected = opts.tags ? history.entries()[history.BestIndex()].epoch : epochs_run;
  RNTM_REQUIRE(!opts.tags || SelectBestModel(history) == "epoch-" + std::to_string(selected),
               "train-ser: model selection mismatch");
  best.Save(OutPath(ctx, opts.name + ".ckpt"));
  WriteText(OutPath(ctx, opts.name + "-history.csv"), hist.str());

  RunReport r;
  r.Add("checkpoint", opts.name + ".ckpt");
  r.Add("base_checkpoint", opts.base_checkpoint);
  r.Add("tags", opts.tags ? "1" : "0");
  std::string patterns;
  for (const auto &p : freeze) patterns += (patterns.empty() ? "" : " ") + p;
  r.Add("freeze", patterns);
  r.Add("epochs_run", epochs_run);
  r.Add("selected_epoch", selected);
  r.Add("dev_emotion_accuracy_pct",
        Percent(history.entries()[static_cast<size_t>(selected - 1)].dev_accuracy));
  r.Add("dev_cer_pct", Percent(best_cer));
  r.Add("encoder_checksum_before", HexU64(encoder_before));
  r.Add("encoder_checksum_after", HexU64(best.params().Checksum("encoder.*")));
  r.Add("encoder_unchanged",
        encoder_before == best.params().Checksum("encoder.*") ? "1" : "0");
  r.Write(OutPath(ctx, opts.name + "-report.csv"), ctx);
  return r;
}

// ---------------------------------------------------------------- train-lid

RunReport RunTrainLid(const RunContext &ctx, const LidOptions &opts, std::ostream &log) {
  RNTM_REQUIRE(!opts.model_checkpoint.empty(), "train-lid: a model checkpoint is required");
  const CorpusManifest manifest = ReadManifest(ctx.data_dir);
  const auto train = LoadSplit(ctx.data_dir, manifest, "train");
  RnntModel asr = RnntModel::Load(opts.model_checkpoint);
  CheckVocabCompatible(asr, manifest);
  const LidStageConfig &cfg = ctx.config.lid;

  LidConfig lc;
  lc.input_dim = asr.config().EncoderOutputDim();
  lc.lstm_hidden = cfg.lstm_hidden;
  lc.num_heads = cfg.num_heads;
  lc.head_dim = cfg.head_dim;
  LidClassifier clf(lc, manifest.languages, Rng::Derive(ctx.config.seed, kLidInitStream).NextU64());

  LidTrainOptions lo;
  lo.learning_rate = cfg.opt.learning_rate;
  lo.epochs = cfg.opt.epochs;
  lo.batch_size = cfg.opt.batch_size;
  lo.clip_norm = cfg.opt.clip_norm;
  lo.dev_fraction = cfg.dev_fraction;
  lo.patience = cfg.patience;
  lo.finetune_encoder = opts.finetune_encoder.value_or(cfg.finetune_encoder);
  lo.seed = ctx.config.seed;
  lo.num_threads = ctx.num_threads;
  const uint64_t encoder_before = asr.params().Checksum("encoder.*");
  const LidTrainResult res = TrainLid(&asr, &clf, LidExamples(train), lo);

  std::ostringstream hist;
  hist << "epoch,dev_accuracy\n";
  for (const auto &e : res.history.entries()) {
    hist << e.epoch << ',' << FormatDouble(e.dev_accuracy) << '\n';
    log << opts.name << ": epoch " << e.epoch << " validation accuracy " << Percent(e.dev_accuracy)
        << "%\n";
  }
  clf.Save(OutPath(ctx, opts.name + ".ckpt"));
  if (lo.finetune_encoder) asr.Save(OutPath(ctx, opts.name + "-asr.ckpt"));
  WriteText(OutPath(ctx, opts.name + "-history.csv"), hist.str());

  RunReport r;
  r.Add("checkpoint", opts.name + ".ckpt");
  r.Add("encoder_checkpoint", lo.finetune_encoder ? opts.name + "-asr.ckpt" : opts.model_checkpoint);
  r.Add("finetune_encoder", lo.finetune_encoder ? "1" : "0");
  r.Add("validation_utterances", static_cast<int>(res.dev_indices.size()));
  r.Add("selected_epoch", res.history.entries()[res.best_index].epoch);
  r.Add("validation_accuracy_pct", Percent(res.history.entries()[res.best_index].dev_accuracy));
  r.Add("encoder_checksum_before", HexU64(encoder_before));
  r.Add("encoder_checksum_after", HexU64(asr.params().Checksum("encoder.*")));
  r.Write(OutPath(ctx, opts.name + "-report.csv"), ctx);
  return r;
}

// ---------------------------------------------------------------- eval

RunReport RunEval(const RunContext &ctx, const std::string &model_checkpoint,
                  const std::string &split, const std::string &name, std::ostream &log) {
  const CorpusManifest manifest = ReadManifest(ctx.data_dir);
  const auto utts = LoadSplit(ctx.data_dir, manifest, split);
  const RnntModel model = RnntModel::Load(model_checkpoint);
  CheckVocabCompatible(model, manifest);
  const AsrEvaluation ev =
      EvaluateAsr(model, utts, manifest, ctx.config.decode.max_symbols_per_frame, ctx.num_threads);
  std::ostringstream os;
  WriteEvalReport(os, ev.rows);
  WriteText(OutPath(ctx, name + "-eval.csv"), os.str());

  RunReport r;
  r.Add("model", model_checkpoint);
  r.Add("split", split);
  r.Add("utterances", static_cast<int>(utts.size()));
  r.Add("emotion_accuracy_pct", Percent(ev.emotion_accuracy));
  r.Add("cer_pct", Percent(ev.chars.Rate()));
  r.Add("wer_pct", Percent(ev.words.Rate()));
  r.Add("char_errors", ev.chars.Errors());
  r.Add("word_errors", ev.words.Errors());
  r.Write(OutPath(ctx, name + "-report.csv"), ctx);
  log << "eval: " << split << " emotion " << Percent(ev.emotion_accuracy) << "% CER "
      << Percent(ev.chars.Rate()) << "% WER " << Percent(ev.words.Rate()) << "%\n";
  return r;
}

// ---------------------------------------------------------------- decode

RunReport RunDecode(const RunContext &ctx, const DecodeOptions &opts, std::ostream &log) {
  RNTM_REQUIRE(!opts.output.empty(), "decode: an output path is required");
  RNTM_REQUIRE(opts.expected_language.empty() || !opts.lid_checkpoint.empty(),
               "decode: --expected-lang needs a LID checkpoint");
  const CorpusManifest manifest = ReadManifest(ctx.data_dir);
  const auto utts = LoadSplit(ctx.data_dir, manifest, opts.split);
  const RnntModel model = RnntModel::Load(opts.model_checkpoint);
  CheckVocabCompatible(model, manifest);
  std::optional<LidClassifier> clf;
  if (!opts.lid_checkpoint.empty()) {
    clf = LidClassifier::Load(opts.lid_checkpoint);
    CheckLanguages(*clf, manifest);
    RNTM_REQUIRE(clf->config().input_dim == model.config().EncoderOutputDim(),
                 "decode: LID classifier does not fit the model's encoder width");
  }
  const double threshold = opts.gate_threshold.value_or(ctx.config.decode.gate_threshold);
  const int max_symbols = ctx.config.decode.max_symbols_per_frame;

  std::vector<std::string> lines(utts.size());
  std::vector<int> rejected(utts.size(), 0);
  ParallelFor(static_cast<int>(utts.size()), ctx.num_threads, [&](int i) {
    const FeatureSequence &u = utts[i];
    std::string transcript, emotion, probs = "-";
    auto format_probs = [&](const Vector &p) {
      std::string s;
      for (int l = 0; l < p.size(); ++l) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s%s:%.4f", l ? ";" : "", clf->languages()[l].c_str(), p[l]);
        s += buf;
      }
      return s;
    };
    if (clf && !opts.expected_language.empty()) {
      const GateResult g =
          GateAndDecode(model, *clf, u.features, opts.expected_language, threshold, max_symbols);
      probs = format_probs(g.probabilities);
      if (g.accepted) {
        transcript = model.vocab().Render(g.transcript);
        emotion = ExtractEmotion(g.transcript, model.vocab());
      } else {
        transcript = "<REJECTED:" + clf->languages()[g.top_language] + ">";
        emotion = "-";
        rejected[i] = 1;
      }
    } else {
      const SequenceTensor enc = model.Encode(u.features);
      const std::vector<int> hyp = model.GreedyDecode(enc, max_symbols);
      transcript = model.vocab().Render(hyp);
      emotion = ExtractEmotion(hyp, model.vocab());
      if (clf) probs = format_probs(clf->Probabilities(enc));
    }
    lines[i] = u.utt_id + '\t' + transcript + '\t' + emotion + '\t' + probs + '\n';
  });
  std::string out;
  int num_rejected = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    out += lines[i];
    num_rejected += rejected[i];
  }
  WriteText(opts.output, out);

  RunReport r;
  r.Add("model", opts.model_checkpoint);
  r.Add("lid", opts.lid_checkpoint.empty() ? "-" : opts.lid_checkpoint);
  r.Add("split", opts.split);
  r.Add("expected_language", opts.expected_language.empty() ? "-" : opts.expected_language);
  r.Add("gate_threshold", threshold);
  r.Add("utterances", static_cast<int>(utts.size()));
  r.Add("rejected", num_rejected);
  r.Write(opts.output + ".report.csv", ctx);
  log << "decode: " << utts.size() << " utterances, " << num_rejected << " rejected\n";
  return r;
}

// ---------------------------------------------------------------- lid-eer

RunReport RunLidEer(const RunContext &ctx, const std::string &model_checkpoint,
                    const std::string &lid_checkpoint, const std::string &name,
                    std::ostream &log) {
  const CorpusManifest manifest = ReadManifest(ctx.data_dir);
  const RnntModel model = RnntModel::Load(model_checkpoint);
  CheckVocabCompatible(model, manifest);
  const LidClassifier clf = LidClassifier::Load(lid_checkpoint);
  CheckLanguages(clf, manifest);

  RunReport r;
  r.Add("model", model_checkpoint);
  r.Add("lid", lid_checkpoint);
  std::vector<EerRow> eer_rows;
  for (const auto &split : manifest.splits) {
    if (split.duration_frames <= 0) continue;
    const auto utts = LoadSplit(ctx.data_dir, manifest, split.name);
    const auto examples = LidExamples(utts);
    const auto trials = ScoreTrials(model, clf, examples, ctx.num_threads);
    const double eer = EqualErrorRate(PooledTrials(trials));
    int hits = 0;
    for (size_t i = 0; i < utts.size(); ++i) {
      int top = 0;
      const int L = clf.NumLanguages();
      for (int l = 1; l < L; ++l)
        if (trials[i * L + l].score > trials[i * L + top].score) top = l;
      hits += top == utts[i].language;
    }
    const double acc = static_cast<double>(hits) / utts.size();
    std::ostringstream os;
    WriteTrialCsv(os, trials, clf.languages());
    WriteText(OutPath(ctx, name + "-trials-dur" + std::to_string(split.duration_frames) + ".csv"),
              os.str());
    eer_rows.push_back({split.duration_frames, eer});
    const std::string d = std::to_string(split.duration_frames);
    r.Add("accuracy_pct.dur" + d, Percent(acc));
    r.Add("eer_pct.dur" + d, Percent(eer));
    log << "lid-eer: " << split.duration_frames << " frames accuracy " << Percent(acc)
        << "% EER " << Percent(eer) << "%\n";
  }
  RNTM_REQUIRE(!eer_rows.empty(), "lid-eer: the corpus has no duration test sets");
  std::ostringstream os;
  WriteEerSummary(os, eer_rows);
  WriteText(OutPath(ctx, name + "-eer.csv"), os.str());
  r.Write(OutPath(ctx, name + "-report.csv"), ctx);
  return r;
}

}  // namespace rntm
