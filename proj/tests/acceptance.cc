// tests/acceptance.cc

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

// Acceptance run. Each numbered criterion prints one PASS or FAIL line; the
// exit status is non-zero if any of them fails. Criteria can be selected by
// number on the command line ("acceptance 1 3 8").

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "base/binary-io.h"
#include "base/rntm-common.h"
#include "cli/cli.h"
#include "cli/pipelines.h"
#include "emotion/emotion-tags.h"
#include "lid/gating.h"
#include "lid/lid-classifier.h"
#include "lid/pooling-head.h"
#include "lid/pooling-oracle.h"
#include "metrics/detection.h"
#include "metrics/edit-distance.h"
#include "metrics/report.h"
#include "nnet/grad-check.h"
#include "nnet/layers.h"
#include "nnet/nnet-test-util.h"
#include "transducer/rnnt-loss.h"
#include "transducer/rnnt-model.h"
#include "transducer/rnnt-oracle.h"

namespace rntm {
namespace {

namespace fs = std::filesystem;
using testing::RandomizeParams;
using testing::RandomMatrix;
using testing::RandomVector;
using testing::StoreMatrix;

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string Fmt(double v, int precision = 3) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

fs::path Scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / "rntm-acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Recipe(const std::string &name) {
  return (fs::path(RNTM_SOURCE_DIR) / "recipes" / name).string();
}

// Runs one rntm command; a non-zero exit becomes an exception carrying the
// command's error output.
void Cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  if (code != 0) {
    std::string cmd;
    for (const auto &a : args) cmd += " " + a;
    throw std::runtime_error("rntm" + cmd + " exited " + std::to_string(code) + ": " + err.str());
  }
}

std::vector<std::vector<std::string>> ReadCsvRows(const std::string &path) {
  std::istringstream is(ReadFileBytes(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(CsvSplit(line));
  }
  return rows;
}

// ---------------------------------------------------------------- 1

Verdict LossOracle() {
  Stopwatch sw;
  Rng rng(101);
  double worst = 0.0;
  const int kInstances = 200;
  for (int i = 0; i < kInstances; ++i) {
    const int T = static_cast<int>(rng.UniformInt(1, 4));
    const int U = static_cast<int>(rng.UniformInt(0, 3));
    const int V = static_cast<int>(rng.UniformInt(2, 5));
    const int blank = static_cast<int>(rng.UniformInt(0, V - 1));
    const Matrix logits = RandomMatrix(T * (U + 1), V, &rng, 3.0);
    const std::vector<int> y = testing::RandomTarget(U, V, blank, &rng);
    const double loss = RnntLoss(logits, T, y, blank, false).loss;
    const testing::Enumeration e = testing::EnumeratePaths(logits, T, y, blank);
    worst = std::max(worst, std::abs(loss + std::log(e.prob)));
  }
  const double secs = sw.Seconds();
  return {worst <= 1e-9 && secs < 10.0,
          std::to_string(kInstances) + " instances, max |loss + log P_enum| = " + Fmt(worst) +
              ", " + Fmt(secs) + " s"};
}

// ---------------------------------------------------------------- 2

struct GradCase {
  std::string name;
  GradCheckResult result;
};

GradCheckResult Probe(const std::function<double(const ParamStore &)> &loss, ParamStore *p,
                      uint64_t seed) {
  GradCheckOptions opts;
  opts.eps = 1e-4;
  opts.max_coords = 64;
  opts.seed = seed;
  return FiniteDiffCheck(loss, p, opts);
}

GradCheckResult LinearCase(Rng *rng) {
  Linear lin("lin", 8, 6);
  ParamStore p;
  lin.Register(&p);
  RandomizeParams(&p, rng);
  StoreMatrix(&p, "x", RandomMatrix(5, 8, rng));
  const Matrix r = RandomMatrix(5, 6, rng);
  auto loss = [&](const ParamStore &s) {
    return (lin.ForwardRows(s, Matrix(s.Mat("x"))).array() * r.array()).sum();
  };
  p.ZeroGrad();
  const Matrix x = p.Mat("x");
  p.GradMat("x") = lin.BackwardRows(p, x, r, &p);
  return Probe(loss, &p, 21);
}

GradCheckResult LstmStepCase(Rng *rng) {
  Lstm cell("cell", 3, 4);
  ParamStore p;
  cell.Register(&p);
  RandomizeParams(&p, rng);
  StoreMatrix(&p, "x", RandomMatrix(1, 3, rng));
  StoreMatrix(&p, "h0", RandomMatrix(1, 4, rng));
  StoreMatrix(&p, "c0", RandomMatrix(1, 4, rng));
  const Vector rh = RandomVector(4, rng), rc = RandomVector(4, rng);
  auto loss = [&](const ParamStore &s) {
    const LstmState next = cell.Step(s, s.Vec("x"), LstmState{s.Vec("h0"), s.Vec("c0")});
    return rh.dot(next.h) + rc.dot(next.c);
  };
  p.ZeroGrad();
  LstmStepCache cache;
  cell.Step(p, p.Vec("x"), LstmState{p.Vec("h0"), p.Vec("c0")}, &cache);
  Vector dx, dh, dc;
  cell.StepBackward(p, cache, rh, rc, &p, &dx, &dh, &dc);
  p.GradVec("x") = dx;
  p.GradVec("h0") = dh;
  p.GradVec("c0") = dc;
  return Probe(loss, &p, 22);
}

GradCheckResult LstmSequenceCase(Rng *rng, bool reverse) {
  Lstm cell("cell", 3, 4);
  ParamStore p;
  cell.Register(&p);
  RandomizeParams(&p, rng);
  StoreMatrix(&p, "x", RandomMatrix(5, 3, rng));
  const Matrix r = RandomMatrix(5, 4, rng);
  auto loss = [&](const ParamStore &s) {
    return (cell.Forward(s, Matrix(s.Mat("x")), reverse).array() * r.array()).sum();
  };
  p.ZeroGrad();
  Lstm::SeqCache cache;
  cell.Forward(p, Matrix(p.Mat("x")), reverse, &cache);
  p.GradMat("x") = cell.Backward(p, cache, r, &p);
  return Probe(loss, &p, reverse ? 24 : 23);
}

GradCheckResult BiLstmCase(Rng *rng) {
  BiLstm bi("bi", 3, 4);
  ParamStore p;
  bi.Register(&p);
  RandomizeParams(&p, rng);
  StoreMatrix(&p, "x", RandomMatrix(4, 3, rng));
  const Matrix r = RandomMatrix(4, 8, rng);
  auto loss = [&](const ParamStore &s) {
    return (bi.Forward(s, Matrix(s.Mat("x"))).array() * r.array()).sum();
  };
  p.ZeroGrad();
  BiLstm::Cache cache;
  bi.Forward(p, Matrix(p.Mat("x")), &cache);
  p.GradMat("x") = bi.Backward(p, cache, r, &p);
  return Probe(loss, &p, 25);
}

GradCheckResult PoolingCase(Rng *rng) {
  PoolingHead head("pool", 4, 3, 2);
  ParamStore p;
  head.Register(&p);
  RandomizeParams(&p, rng, 1.0);
  StoreMatrix(&p, "x", RandomMatrix(5, 4, rng));
  const Vector r = RandomVector(6, rng);
  auto loss = [&](const ParamStore &s) { return head.Forward(s, Matrix(s.Mat("x"))).dot(r); };
  p.ZeroGrad();
  PoolingHead::Cache cache;
  head.Forward(p, Matrix(p.Mat("x")), &cache);
  p.GradMat("x") = head.Backward(p, cache, r, &p);
  return Probe(loss, &p, 26);
}

GradCheckResult LidClassifierCase(Rng *rng) {
  LidConfig c;
  c.input_dim = 4;
  c.lstm_hidden = 4;
  c.num_heads = 2;
  c.head_dim = 3;
  LidClassifier clf(c, {"a", "b", "c"}, 7);
  RandomizeParams(&clf.params(), rng, 0.8);
  const SequenceTensor enc(RandomMatrix(5, 4, rng));
  const int label = 1;
  ParamStore p = clf.params();
  StoreMatrix(&p, "enc", enc.frames());
  LidClassifier probe = clf;
  auto loss = [&](const ParamStore &s) {
    probe.params().CopyValuesFrom(s, "lid.*");
    return probe.LossAndGrad(SequenceTensor(Matrix(s.Mat("enc"))), label, nullptr);
  };
  ParamStore g = clf.params().GradientBuffer();
  Matrix d_enc;
  clf.LossAndGrad(enc, label, &g, &d_enc);
  p.ZeroGrad();
  for (auto &[name, t] : g) p.Get(name).grad = t.grad;
  p.GradMat("enc") = d_enc;
  return Probe(loss, &p, 27);
}

GradCheckResult TransducerLossCase(Rng *rng) {
  const int T = 4, V = 6;
  const std::vector<int> y = {2, 5, 1};
  ParamStore p;
  StoreMatrix(&p, "logits", RandomMatrix(T * 4, V, rng, 2.0));
  auto loss = [&](const ParamStore &s) {
    return RnntLoss(Matrix(s.Mat("logits")), T, y, 0, false).loss;
  };
  p.ZeroGrad();
  p.GradMat("logits") = RnntLoss(Matrix(p.Mat("logits")), T, y, 0).logit_grads;
  return Probe(loss, &p, 28);
}

GradCheckResult FullModelCase(Rng *rng, int rep) {
  RnntConfig c;
  c.feature_dim = 3;
  c.encoder_layers = 2;
  c.encoder_hidden = 3;
  c.embed_dim = 2;
  c.predictor_hidden = 3;
  c.joint_hidden = 4;
  RnntModel m(c, Vocab({"<b>", "a", "b", "c", "<X>"}, 0, {4}), 100 + rep);
  const SequenceTensor x(RandomMatrix(3 + rep, 3, rng));
  const std::vector<int> all = {1, 4, 2};
  const std::vector<int> y(all.begin(), all.begin() + rep);
  m.params().ZeroGrad();
  m.LossAndGrad(x, y, &m.params());
  return Probe([&](const ParamStore &) { return m.Loss(x, y); }, &m.params(), 50 + rep);
}

Verdict GradientSuite() {
  Stopwatch sw;
  Rng rng(202);
  std::vector<GradCase> cases;
  cases.push_back({"linear", LinearCase(&rng)});
  cases.push_back({"lstm-step", LstmStepCase(&rng)});
  cases.push_back({"lstm-forward", LstmSequenceCase(&rng, false)});
  cases.push_back({"lstm-reverse", LstmSequenceCase(&rng, true)});
  cases.push_back({"bilstm", BiLstmCase(&rng)});
  cases.push_back({"pooling", PoolingCase(&rng)});
  cases.push_back({"lid-classifier", LidClassifierCase(&rng)});
  cases.push_back({"transducer-loss", TransducerLossCase(&rng)});
  for (int rep = 0; rep < 3; ++rep)
    cases.push_back({"full-model-" + std::to_string(rep), FullModelCase(&rng, rep)});
  const double secs = sw.Seconds();

  bool pass = secs < 60.0;
  std::string detail;
  for (const auto &c : cases) {
    const bool ok = c.result.ok && c.result.coords_checked >= 64 && c.result.max_rel_error < 1e-4;
    pass = pass && ok;
    detail += c.name + "=" + Fmt(c.result.max_rel_error, 2) + "/" +
              std::to_string(c.result.coords_checked) + (ok ? "" : "(" + c.result.worst_param + ")") +
              " ";
  }
  return {pass, "max rel error/coords: " + detail + Fmt(secs) + " s"};
}

// ---------------------------------------------------------------- 3

Verdict PoolingProperties() {
  const testing::PoolingPropertyReport r = testing::CheckPoolingProperties(1000, 303);
  const bool pass = r.trials == 1000 && r.permutation <= 1e-12 && r.shift <= 1e-12 &&
                    r.min_output >= 0.0 && r.single_frame <= 1e-12 && r.uniform <= 1e-12;
  return {pass, std::to_string(r.trials) + " trials, permutation " + Fmt(r.permutation) +
                    ", shift " + Fmt(r.shift) + ", min y " + Fmt(r.min_output) + ", T=1 " +
                    Fmt(r.single_frame) + ", uniform " + Fmt(r.uniform)};
}

// ---------------------------------------------------------------- 4

// Last tag by a backwards scan over the symbol strings.
std::string LastTagLabel(const std::vector<int> &ids, const Vocab &v) {
  for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
    const std::string &s = v.Symbol(*it);
    if (s.size() > 2 && s.front() == '<' && s.back() == '>') return s.substr(1, s.size() - 2);
  }
  return "NEUTRAL";
}

Verdict EmotionRoundTrip() {
  const Vocab base({"<blank>", " ", "a", "b", "c", "d", "e", "f", "g", "h"}, 0);
  const Vocab vocab = ExtendVocabWithEmotions(base, DefaultEmotions());
  Rng rng(404);
  int round_trips = 0, round_trip_failures = 0;
  for (const auto &e : DefaultEmotions()) {
    for (int n = 0; n < 100; ++n) {
      std::vector<int> x(rng.UniformInt(0, 12));
      for (int &id : x) id = static_cast<int>(rng.UniformInt(1, base.Size() - 1));
      const std::vector<int> aug = AugmentTarget(x, e, vocab);
      ++round_trips;
      if (ExtractEmotion(aug, vocab) != e || StripTags(aug, vocab) != x ||
          aug.size() != x.size() + 1 || vocab.Symbol(aug.back()) != "<" + e + ">")
        ++round_trip_failures;
    }
  }
  // Decoded streams with any number of tags anywhere.
  int rule_failures = 0, untagged = 0;
  for (int n = 0; n < 2000; ++n) {
    std::vector<int> d(rng.UniformInt(0, 10));
    for (int &id : d) {
      id = rng.Uniform() < 0.3 ? vocab.tag_ids()[rng.UniformInt(0, vocab.tag_ids().size() - 1)]
                               : static_cast<int>(rng.UniformInt(1, base.Size() - 1));
    }
    std::vector<int> plain;
    for (int id : d)
      if (!IsTagSymbol(vocab.Symbol(id))) plain.push_back(id);
    if (plain.size() == d.size()) ++untagged;
    if (ExtractEmotion(d, vocab) != LastTagLabel(d, vocab) || StripTags(d, vocab) != plain)
      ++rule_failures;
  }
  const bool fallback = ExtractEmotion(std::vector<int>{}, vocab) == kNeutral &&
                        ExtractEmotion(std::vector<int>{2, 1, 3}, vocab) == kNeutral &&
                        ExtractEmotion(std::vector<int>{2, 3}, vocab, "CALM") == "CALM";
  const bool pass = round_trip_failures == 0 && rule_failures == 0 && untagged > 0 && fallback;
  return {pass, std::to_string(round_trips) + " round trips (" +
                    std::to_string(round_trip_failures) + " failed), 2000 decoded streams (" +
                    std::to_string(untagged) + " untagged, " + std::to_string(rule_failures) +
                    " failed), neutral fallback " + (fallback ? "ok" : "wrong")};
}

// ---------------------------------------------------------------- 5

double EmotionAccuracyFromEval(const std::string &path) {
  const auto rows = ReadCsvRows(path);
  RNTM_REQUIRE(!rows.empty(), path << ": no rows");
  int correct = 0;
  for (const auto &r : rows) {
    RNTM_REQUIRE(r.size() == 7, path << ": expected 7 columns");
    if (r[5] == r[6]) ++correct;
  }
  return static_cast<double>(correct) / rows.size();
}

Verdict SerEndToEnd() {
  Stopwatch sw;
  const fs::path root = Scratch("ser");
  const std::string cfg = Recipe("iemocap-analog.json");
  const std::string data = (root / "data").string(), out = (root / "out").string();
  auto run = [&](std::vector<std::string> args) {
    args.insert(args.end(), {"--config", cfg, "--data-dir", data});
    if (args[0] != "gen-data") args.insert(args.end(), {"--out-dir", out});
    Cli(args);
  };
  auto at = [&](const std::string &f) { return (root / "out" / f).string(); };

  run({"gen-data"});
  run({"train-asr"});
  run({"train-ser", "--base", at("asr.ckpt"), "--name", "whole"});
  run({"train-ser", "--base", at("asr.ckpt"), "--name", "frozen", "--freeze", "encoder.*"});
  const std::string epochs = ReadRunReport(at("whole-report.csv")).Get("selected_epoch");
  run({"train-ser", "--base", at("asr.ckpt"), "--name", "baseline", "--no-tags", "--epochs",
       epochs});
  for (const char *m : {"whole", "frozen", "baseline"})
    run({"eval", "--model", at(std::string(m) + ".ckpt"), "--split", "test", "--name",
         std::string("test-") + m});

  const double acc_whole = EmotionAccuracyFromEval(at("test-whole-eval.csv"));
  const double acc_frozen = EmotionAccuracyFromEval(at("test-frozen-eval.csv"));
  const RunReport whole = ReadRunReport(at("test-whole-report.csv"));
  const RunReport baseline = ReadRunReport(at("test-baseline-report.csv"));
  const int werr_whole = std::stoi(whole.Get("word_errors"));
  const int werr_base = std::stoi(baseline.Get("word_errors"));
  const double secs = sw.Seconds();

  const bool pass =
      acc_whole >= 0.90 && werr_whole <= werr_base && acc_frozen <= acc_whole && secs <= 600.0;
  return {pass, "whole emotion acc " + Fmt(acc_whole) + " (>= 0.9), test WER whole " +
                    whole.Get("wer_pct") + "% vs baseline " + baseline.Get("wer_pct") + "% (" +
                    std::to_string(werr_whole) + " vs " + std::to_string(werr_base) +
                    " word errors), frozen acc " + Fmt(acc_frozen) + ", baseline epochs " + epochs +
                    ", " + Fmt(secs) + " s"};
}

// ---------------------------------------------------------------- 6

// Fraction of utterances whose highest-scoring trial is the target one.
double AccuracyFromTrials(const std::string &path) {
  std::map<std::string, std::pair<double, bool>> best;  // utt -> (score, is_target)
  for (const auto &r : ReadCsvRows(path)) {
    RNTM_REQUIRE(r.size() == 4, path << ": expected 4 columns");
    const double score = std::stod(r[2]);
    const bool target = r[3] == "1";
    auto it = best.find(r[0]);
    if (it == best.end() || score > it->second.first) best[r[0]] = {score, target};
  }
  RNTM_REQUIRE(!best.empty(), path << ": no trials");
  int correct = 0;
  for (const auto &[utt, b] : best) correct += b.second ? 1 : 0;
  return static_cast<double>(correct) / best.size();
}

Verdict LidEndToEnd() {
  Stopwatch sw;
  const fs::path root = Scratch("lid");
  const std::string cfg = Recipe("lre-analog.json");
  const std::string data = (root / "data").string(), out = (root / "out").string();
  auto run = [&](std::vector<std::string> args) {
    args.insert(args.end(), {"--config", cfg, "--data-dir", data});
    if (args[0] != "gen-data") args.insert(args.end(), {"--out-dir", out});
    Cli(args);
  };
  auto at = [&](const std::string &f) { return (root / "out" / f).string(); };

  run({"gen-data"});
  run({"train-asr"});
  run({"train-lid", "--model", at("asr.ckpt"), "--name", "lid"});
  run({"lid-eer", "--model", at("asr.ckpt"), "--lid", at("lid.ckpt"), "--name", "eer"});

  const double acc100 = AccuracyFromTrials(at("eer-trials-dur100.csv"));
  std::vector<std::pair<int, double>> eer;
  for (const auto &r : ReadCsvRows(at("eer-eer.csv"))) eer.emplace_back(std::stoi(r[0]), std::stod(r[1]));
  const std::vector<int> want = {10, 30, 100, 300};
  bool durations_ok = eer.size() == want.size();
  bool monotone = true;
  std::string trend;
  for (size_t i = 0; i < eer.size(); ++i) {
    if (i < want.size() && eer[i].first != want[i]) durations_ok = false;
    if (i > 0 && eer[i].second > eer[i - 1].second) monotone = false;
    trend += (i ? " -> " : "") + Fmt(eer[i].second);
  }
  const double eer300 = eer.empty() ? 1.0 : eer.back().second;
  const double secs = sw.Seconds();
  const bool pass = acc100 >= 0.95 && durations_ok && monotone && eer300 <= 0.02 && secs <= 300.0;
  return {pass, "accuracy at 100 frames " + Fmt(acc100) + " (>= 0.95), EER over 10/30/100/300 " +
                    trend + (monotone ? " (non-increasing)" : " (increases)") + ", EER(300) " +
                    Fmt(eer300) + " (<= 0.02), " + Fmt(secs) + " s"};
}

// ---------------------------------------------------------------- 7

Verdict GatingSingleEncode() {
  RnntConfig c;
  c.feature_dim = 5;
  c.encoder_layers = 2;
  c.encoder_hidden = 4;
  c.embed_dim = 3;
  c.predictor_hidden = 4;
  c.joint_hidden = 5;
  const RnntModel asr(c, Vocab({"<b>", "a", "b", " "}, 0), 17);
  LidConfig lc;
  lc.input_dim = c.EncoderOutputDim();
  lc.lstm_hidden = 4;
  lc.num_heads = 2;
  lc.head_dim = 3;
  const std::vector<std::string> langs = {"L0", "L1", "L2"};
  LidClassifier clf(lc, langs, 18);
  Rng rng(707);
  RandomizeParams(&clf.params(), &rng, 1.5);

  RnntModel counted = asr;
  const std::vector<double> thresholds = {0.0, 0.2, 0.35, 0.5, 0.8, 1.0};
  int utterances = 0, bad_counts = 0, mismatches = 0, accepted = 0, rejected = 0;
  for (int n = 0; n < 60; ++n) {
    const SequenceTensor x(RandomMatrix(static_cast<int>(rng.UniformInt(2, 12)), 5, &rng, 2.0));
    const std::string expected = langs[rng.UniformInt(0, 2)];
    const double th = thresholds[n % thresholds.size()];
    counted.ResetEncodeCalls();
    const GateResult g = GateAndDecode(counted, clf, x, expected, th);
    ++utterances;
    if (counted.encode_calls() != 1) ++bad_counts;
    (g.accepted ? accepted : rejected)++;
    // Reference computed outside the counted model.
    const SequenceTensor enc = asr.Encode(x);
    const Vector probs = clf.Probabilities(enc);
    const bool should_accept = probs[clf.LanguageIndex(expected)] >= th;
    const std::vector<int> ref = should_accept ? asr.GreedyDecode(enc) : std::vector<int>{};
    if (g.accepted != should_accept || g.transcript != ref ||
        (g.probabilities - probs).cwiseAbs().maxCoeff() > 1e-12)
      ++mismatches;
  }
  const bool pass = bad_counts == 0 && mismatches == 0 && accepted > 0 && rejected > 0;
  return {pass, std::to_string(utterances) + " utterances (" + std::to_string(accepted) +
                    " accepted, " + std::to_string(rejected) + " rejected), " +
                    std::to_string(bad_counts) + " with an encoder call count other than 1, " +
                    std::to_string(mismatches) + " differing from encode-then-decode"};
}

// ---------------------------------------------------------------- 8

// Levenshtein distance straight from its recursive definition, memoized.
int RecursiveDistance(const std::string &a, const std::string &b) {
  std::vector<int> memo((a.size() + 1) * (b.size() + 1), -1);
  std::function<int(size_t, size_t)> d = [&](size_t i, size_t j) -> int {
    if (i == a.size()) return static_cast<int>(b.size() - j);
    if (j == b.size()) return static_cast<int>(a.size() - i);
    int &m = memo[i * (b.size() + 1) + j];
    if (m < 0)
      m = std::min({d(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1), d(i + 1, j) + 1, d(i, j + 1) + 1});
    return m;
  };
  return d(0, 0);
}

Verdict Metrics() {
  std::vector<std::string> strings = {""};
  for (size_t begin = 0, len = 1; len <= 6; ++len) {
    const size_t end = strings.size();
    for (size_t k = begin; k < end; ++k)
      for (char ch : {'a', 'b', 'c'}) strings.push_back(strings[k] + ch);
    begin = end;
  }
  long pairs = 0, failures = 0;
  for (const auto &a : strings) {
    for (const auto &b : strings) {
      ++pairs;
      const int want = RecursiveDistance(a, b);
      const ErrorCounts c = Align(std::span<const char>(a), std::span<const char>(b));
      if (EditDistance(a, b) != want || c.Errors() != want ||
          c.deletions - c.insertions != static_cast<int>(a.size()) - static_cast<int>(b.size()))
        ++failures;
    }
  }
  const double e0 = EqualErrorRate(std::vector<Trial>{{0.9, true}, {0.8, true}, {0.3, false}, {0.1, false}});
  const double e5 = EqualErrorRate(std::vector<Trial>{{0.5, true}, {0.5, false}, {0.5, true}, {0.5, false}});
  const double e25 = EqualErrorRate(std::vector<Trial>{{0.9, true}, {0.4, true}, {0.6, false}, {0.1, false}});
  const bool eer_ok =
      std::abs(e0 - 0.0) <= 1e-12 && std::abs(e5 - 0.5) <= 1e-12 && std::abs(e25 - 0.25) <= 1e-12;
  return {failures == 0 && eer_ok && strings.size() == 1093,
          std::to_string(strings.size()) + " strings, " + std::to_string(pairs) + " pairs, " +
              std::to_string(failures) + " mismatches; EER hand cases " + FormatDouble(e0) + " / " +
              FormatDouble(e5) + " / " + FormatDouble(e25)};
}

// ---------------------------------------------------------------- 9

const char *kReproConfig = R"({
  "seed": 11,
  "corpus": {"num_languages": 3, "inventory_size": 5, "feature_dim": 8,
             "train": 48, "dev": 12, "test": 12, "durations": [10, 30]},
  "model": {"encoder_layers": 1, "encoder_hidden": 8, "embed_dim": 4,
            "predictor_hidden": 8, "joint_hidden": 8},
  "asr": {"epochs": 3},
  "ser": {"epochs": 3, "patience": 2},
  "lid": {"epochs": 3, "lstm_hidden": 4, "num_heads": 2, "head_dim": 3, "dev_fraction": 0.25}
})";

std::map<std::string, std::string> Snapshot(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = ReadFileBytes(e.path().string());
  return files;
}

Verdict Reproducibility() {
  const fs::path root = Scratch("repro");
  auto j = nlohmann::json::parse(kReproConfig);
  j["data_dir"] = (root / "run" / "data").string();
  j["output_dir"] = (root / "run" / "out").string();
  const std::string cfg = (root / "config.json").string();
  WriteFileBytes(cfg, j.dump(1));
  auto at = [&](const std::string &f) { return (root / "run" / "out" / f).string(); };
  const std::vector<std::vector<std::string>> commands = {
      {"gen-data"},
      {"train-asr"},
      {"train-ser", "--base", at("asr.ckpt")},
      {"train-ser", "--base", at("asr.ckpt"), "--name", "frozen", "--freeze", "encoder.*"},
      {"train-ser", "--base", at("asr.ckpt"), "--name", "baseline", "--no-tags"},
      {"train-lid", "--model", at("ser.ckpt")},
      {"train-lid", "--model", at("ser.ckpt"), "--name", "ft", "--finetune-encoder"},
      {"eval", "--model", at("ser.ckpt")},
      {"decode", "--model", at("ser.ckpt"), "--lid", at("lid.ckpt"), "--expected-lang", "L1",
       "--output", at("decoded.tsv")},
      {"lid-eer", "--model", at("ser.ckpt"), "--lid", at("lid.ckpt")},
  };
  auto run_all = [&]() {
    for (auto args : commands) {
      args.insert(args.end(), {"--config", cfg});
      Cli(args);
    }
  };
  run_all();
  const auto first = Snapshot(root / "run");
  run_all();
  const auto second = Snapshot(root / "run");

  int csv = 0, ckpt = 0;
  std::vector<std::string> differing;
  for (const auto &[name, bytes] : first) {
    if (name.ends_with(".csv")) ++csv;
    if (name.ends_with(".ckpt")) ++ckpt;
    auto it = second.find(name);
    if (it == second.end() || it->second != bytes) differing.push_back(name);
  }
  for (const auto &[name, bytes] : second)
    if (!first.count(name)) differing.push_back(name);
  std::string detail = std::to_string(commands.size()) + " commands run twice, " +
                       std::to_string(first.size()) + " files (" + std::to_string(csv) + " CSV, " +
                       std::to_string(ckpt) + " checkpoints), " +
                       std::to_string(differing.size()) + " differ";
  for (const auto &d : differing) detail += " " + d;
  return {differing.empty() && csv > 0 && ckpt > 0, detail};
}

struct Criterion {
  int number;
  const char *title;
  Verdict (*run)();
};

}  // namespace
}  // namespace rntm

int main(int argc, char **argv) {
  using namespace rntm;
  const std::vector<Criterion> all = {
      {1, "transducer loss equals path enumeration", LossOracle},
      {2, "finite-difference gradient suite", GradientSuite},
      {3, "pooling properties", PoolingProperties},
      {4, "emotion tag round trip", EmotionRoundTrip},
      {5, "emotion recognition end to end", SerEndToEnd},
      {6, "language identification end to end", LidEndToEnd},
      {7, "gating encodes once", GatingSingleEncode},
      {8, "edit distance and EER", Metrics},
      {9, "byte-identical reruns", Reproducibility},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0, ran = 0;
  for (const auto &c : all) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    ++ran;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception &e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("ACCEPTANCE %d %s: %s | %s\n", c.number, v.pass ? "PASS" : "FAIL", c.title,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("ACCEPTANCE SUMMARY: %d/%d passed\n", ran - failed, ran);
  std::error_code ec;
  std::filesystem::remove_all(std::filesystem::temp_directory_path() / "rntm-acceptance", ec);
  return failed == 0 ? 0 : 1;
}
