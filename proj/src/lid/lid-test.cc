// lid/lid-test.cc

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

#include <cmath>
#include <sstream>

#include "base/rntm-common.h"
#include "doctest.h"
#include "lid/gating.h"
#include "lid/lid-trainer.h"
#include "lid/pooling-oracle.h"
#include "metrics/detection.h"
#include "nnet/grad-check.h"
#include "nnet/nnet-math.h"
#include "synth/generator.h"

namespace rntm {
namespace {

using testing::CheckPoolingProperties;
using testing::DirectPool;
using testing::RandomizeParams;
using testing::RandomMatrix;
using testing::StoreMatrix;

void SetTensor(ParamStore *p, const std::string &name, std::vector<double> v) {
  REQUIRE(p->Get(name).value.size() == v.size());
  p->Get(name).value = std::move(v);
}

RnntModel SmallAsr(int feature_dim, uint64_t seed) {
  RnntConfig c;
  c.feature_dim = feature_dim;
  c.encoder_layers = 1;
  c.encoder_hidden = 8;
  c.embed_dim = 4;
  c.predictor_hidden = 8;
  c.joint_hidden = 8;
  return RnntModel(c, Vocab({"<blank>", "A", "B"}, 0), seed);
}

LidConfig SmallLid(int input_dim) {
  LidConfig c;
  c.input_dim = input_dim;
  c.lstm_hidden = 4;
  c.num_heads = 2;
  c.head_dim = 3;
  return c;
}

}  // namespace

TEST_CASE("pooling: hand-set two-head case") {
  PoolingHead head("pool", 1, 2, 1);
  ParamStore p;
  head.Register(&p);
  SetTensor(&p, "pool.pr1.w", {1.0, 0.0});
  SetTensor(&p, "pool.pr2.w", {1.0, 0.0, 0.0, 1.0});
  SetTensor(&p, "pool.pr3.w", {1.0, -1.0});
  Matrix x(2, 1);
  x << 1.0, -2.0;
  const Vector y = head.Forward(p, x);
  // Head 0: exp(logsigmoid(a)) is the logistic sigmoid, so the frame weights
  // are s(1) and s(-2); only frame 0 has a positive ReLU(Pr3 x) there.
  const double s1 = 1.0 / (1.0 + std::exp(-1.0)), s2 = 1.0 / (1.0 + std::exp(2.0));
  CHECK(y[0] == doctest::Approx(s1 / (s1 + s2)).epsilon(1e-14));
  CHECK(y[0] == doctest::Approx(0.859803).epsilon(1e-6));
  // Head 1: both frames weigh logsigmoid(0), ReLU values 0 and 2.
  CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pooling: matches direct evaluation") {
  Rng rng(21);
  for (int n = 0; n < 50; ++n) {
    PoolingHead head("pool", 5, 3, 2);
    ParamStore p;
    head.Register(&p);
    RandomizeParams(&p, &rng, 1.0);
    const Matrix x = RandomMatrix(static_cast<int>(rng.UniformInt(1, 7)), 5, &rng);
    const Vector y = head.Forward(p, x);
    const auto expect = DirectPool(p, head, x);
    for (int i = 0; i < y.size(); ++i) CHECK(y[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }
}

TEST_CASE("pooling: randomized properties") {
  const auto rep = CheckPoolingProperties(300, 22);
  CHECK(rep.trials == 300);
  CHECK(rep.permutation <= 1e-12);
  CHECK(rep.shift <= 1e-12);
  CHECK(rep.min_output >= 0.0);
  CHECK(rep.single_frame <= 1e-12);
  CHECK(rep.uniform <= 1e-12);
}

TEST_CASE("pooling: gradients match finite differences") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    PoolingHead head("pool", 4, 3, 2);
    ParamStore p;
    head.Register(&p);
    RandomizeParams(&p, &rng, 1.0);
    StoreMatrix(&p, "x", RandomMatrix(5, 4, &rng));
    const Vector r = testing::RandomVector(6, &rng);
    auto loss = [&](const ParamStore &s) {
      Matrix x = s.Mat("x");
      return head.Forward(s, x).dot(r);
    };
    PoolingHead::Cache cache;
    Matrix x = p.Mat("x");
    head.Forward(p, x, &cache);
    p.ZeroGrad();
    p.GradMat("x") = head.Backward(p, cache, r, &p);
    GradCheckOptions opts;
    opts.max_coords = 0;
    const auto res = FiniteDiffCheck(loss, &p, opts);
    CHECK(res.ok);
    CHECK(res.max_rel_error < 1e-4);
  }
}

TEST_CASE("pooling: contract errors") {
  PoolingHead head("pool", 3, 2, 2);
  ParamStore p;
  head.Register(&p);
  CHECK_THROWS_AS(head.Forward(p, Matrix::Zero(2, 4)), ContractError);
  CHECK_THROWS_AS(PoolingHead("bad", 3, 0, 2), ContractError);
}

TEST_CASE("lid classifier: probabilities") {
  Rng rng(31);
  LidClassifier clf(SmallLid(6), {"L0", "L1", "L2"}, 4);
  RandomizeParams(&clf.params(), &rng, 1.0);
  for (int n = 0; n < 100; ++n) {
    const SequenceTensor enc(RandomMatrix(static_cast<int>(rng.UniformInt(1, 9)), 6, &rng, 3.0));
    const Vector p = clf.Probabilities(enc);
    CHECK(std::abs(p.sum() - 1.0) <= 1e-12);
    CHECK(p.minCoeff() > 0.0);
    CHECK(p.maxCoeff() < 1.0);
  }
  for (const char *t : {"lid.out.w", "lid.out.b"})
    for (double &v : clf.params().Get(t).value) v = 0.0;
  const Vector u = clf.Probabilities(SequenceTensor(RandomMatrix(4, 6, &rng)));
  for (int l = 0; l < 3; ++l) CHECK(u[l] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK_THROWS_AS(clf.Probabilities(SequenceTensor(RandomMatrix(4, 5, &rng))), ContractError);
  CHECK_THROWS_AS(LidClassifier(SmallLid(6), {"L0"}, 1), ContractError);
  CHECK(clf.LanguageIndex("L2") == 2);
  CHECK(clf.LanguageIndex("L9") == -1);
}

TEST_CASE("lid classifier: step-by-step composition") {
  Rng rng(32);
  LidClassifier clf(SmallLid(5), {"a", "b", "c"}, 6);
  RandomizeParams(&clf.params(), &rng, 0.8);
  const ParamStore &p = clf.params();
  const Matrix x = RandomMatrix(3, 5, &rng);
  // BiLSTM from single cell steps, forward then backward in time.
  const Lstm &fwd = clf.bilstm().forward_lstm(), &bwd = clf.bilstm().backward_lstm();
  Matrix h(3, 8);
  LstmState s = fwd.ZeroState();
  for (int t = 0; t < 3; ++t) {
    s = fwd.Step(p, x.row(t).transpose(), s);
    h.row(t).head(4) = s.h.transpose();
  }
  s = bwd.ZeroState();
  for (int t = 2; t >= 0; --t) {
    s = bwd.Step(p, x.row(t).transpose(), s);
    h.row(t).tail(4) = s.h.transpose();
  }
  const auto y = DirectPool(p, clf.pooling(), h);
  const auto &w = p.Get("lid.out.w").value;
  const auto &b = p.Get("lid.out.b").value;
  std::vector<double> logits(3);
  double z = 0.0;
  for (int l = 0; l < 3; ++l) {
    logits[l] = b[l];
    for (size_t k = 0; k < y.size(); ++k) logits[l] += w[l * y.size() + k] * y[k];
    z += std::exp(logits[l]);
  }
  const Vector got = clf.Probabilities(SequenceTensor(x));
  for (int l = 0; l < 3; ++l) CHECK(got[l] == doctest::Approx(std::exp(logits[l]) / z).epsilon(1e-12));
}

TEST_CASE("lid classifier: cross-entropy gradients") {
  Rng rng(33);
  LidClassifier clf(SmallLid(4), {"a", "b", "c"}, 7);
  RandomizeParams(&clf.params(), &rng, 0.8);
  const SequenceTensor enc(RandomMatrix(5, 4, &rng));
  for (int label = 0; label < 3; ++label) {
    ParamStore p = clf.params();
    StoreMatrix(&p, "enc", enc.frames());
    LidClassifier probe = clf;
    auto loss = [&](const ParamStore &s) {
      probe.params().CopyValuesFrom(s, "lid.*");
      return probe.LossAndGrad(SequenceTensor(Matrix(s.Mat("enc"))), label, nullptr);
    };
    ParamStore g = clf.params().GradientBuffer();
    Matrix d_enc;
    const double l = clf.LossAndGrad(enc, label, &g, &d_enc);
    CHECK(l == doctest::Approx(-std::log(clf.Probabilities(enc)[label])).epsilon(1e-12));
    p.ZeroGrad();
    for (auto &[name, t] : g) p.Get(name).grad = t.grad;
    p.GradMat("enc") = d_enc;
    GradCheckOptions opts;
    opts.max_coords = 0;
    const auto res = FiniteDiffCheck(loss, &p, opts);
    CHECK(res.ok);
    CHECK(res.max_rel_error < 1e-4);
  }
}

TEST_CASE("lid classifier: checkpoint round trip") {
  LidClassifier clf(SmallLid(4), {"x", "y"}, 8);
  clf.set_encoder_finetune(true);
  const LidClassifier back = LidClassifier::FromCheckpoint(
      ParseCheckpoint(SerializeCheckpoint(clf.ToCheckpoint())));
  CHECK(back.config() == clf.config());
  CHECK(back.languages() == clf.languages());
  CHECK(back.encoder_finetune());
  CHECK(back.params().Checksum() == clf.params().Checksum());
  Checkpoint wrong = clf.ToCheckpoint();
  wrong.metadata["kind"] = "rnnt";
  CHECK_THROWS_AS(LidClassifier::FromCheckpoint(wrong), ContractError);
}

namespace {

struct LidFixture {
  CorpusSpec spec;
  std::vector<FeatureSequence> utts;
  std::vector<LidExample> examples;

  LidFixture(int count, uint64_t seed, double overlap = 0.5) {
    CorpusConfig c;
    c.feature_dim = 8;
    c.overlap = overlap;
    spec = BuildCorpusSpec(c, seed);
    utts = GenerateSplit(spec, "train", count);
    for (const auto &u : utts) examples.push_back({u.utt_id, &u.features, u.language});
  }
  std::vector<std::string> Languages() const {
    std::vector<std::string> out;
    for (const auto &l : spec.languages) out.push_back(l.name);
    return out;
  }
};

}  // namespace

TEST_CASE("train lid: frozen encoder, separable languages") {
  // Disjoint inventories: every utterance is identifiable from one frame.
  LidFixture fx(300, 41, 0.0);
  RnntModel asr = SmallAsr(8, 42);
  LidConfig cfg;  // default head layout
  cfg.input_dim = 16;
  LidClassifier clf(cfg, fx.Languages(), 43);
  const uint64_t before = asr.params().Checksum();
  LidTrainOptions opts;
  opts.epochs = 30;
  opts.seed = 44;
  const LidTrainResult res = TrainLid(&asr, &clf, fx.examples, opts);
  CHECK(asr.params().Checksum() == before);
  CHECK(res.dev_indices.size() == 30);
  CHECK(res.history.size() == 30);
  const double best = res.history.entries()[res.best_index].dev_accuracy;
  CHECK(best >= 0.95);
  std::vector<LidExample> dev;
  for (int i : res.dev_indices) dev.push_back(fx.examples[i]);
  CHECK(LidAccuracy(asr, clf, dev) == best);
  CHECK_FALSE(clf.encoder_finetune());
}

TEST_CASE("train lid: fine-tuning touches only the encoder") {
  LidFixture fx(60, 45);
  RnntModel asr = SmallAsr(8, 46);
  asr.params().SetFrozen("encoder.*", true);
  LidClassifier clf(SmallLid(16), fx.Languages(), 47);
  const uint64_t enc = asr.params().Checksum("encoder.*");
  const uint64_t rest_pred = asr.params().Checksum("predictor.*");
  const uint64_t rest_joint = asr.params().Checksum("joint.*");
  LidTrainOptions opts;
  opts.epochs = 3;
  opts.finetune_encoder = true;
  opts.dev_fraction = 0.2;
  TrainLid(&asr, &clf, fx.examples, opts);
  CHECK(asr.params().Checksum("encoder.*") != enc);
  CHECK(asr.params().Checksum("predictor.*") == rest_pred);
  CHECK(asr.params().Checksum("joint.*") == rest_joint);
  CHECK(clf.encoder_finetune());
}

TEST_CASE("train lid: deterministic and thread-count independent") {
  LidFixture fx(60, 48);
  const RnntModel asr = SmallAsr(8, 49);
  auto run = [&](int threads) {
    RnntModel a = asr;
    LidClassifier clf(SmallLid(16), fx.Languages(), 50);
    LidTrainOptions opts;
    opts.epochs = 2;
    opts.dev_fraction = 0.2;
    opts.num_threads = threads;
    TrainLid(&a, &clf, fx.examples, opts);
    return clf.params().Checksum();
  };
  CHECK(run(1) == run(1));
  CHECK(run(1) == run(3));
}

TEST_CASE("train lid: contract errors") {
  LidFixture fx(30, 51);
  RnntModel asr = SmallAsr(8, 52);
  LidClassifier clf(SmallLid(16), fx.Languages(), 53);
  std::vector<LidExample> one;
  for (const auto &ex : fx.examples)
    if (ex.language == 1) one.push_back(ex);
  CHECK_THROWS_AS(TrainLid(&asr, &clf, one, {}), ContractError);
  LidClassifier wide(SmallLid(20), fx.Languages(), 53);
  CHECK_THROWS_AS(TrainLid(&asr, &wide, fx.examples, {}), ContractError);
  LidTrainOptions none;
  none.dev_fraction = 0.0;
  CHECK_THROWS_AS(TrainLid(&asr, &clf, fx.examples, none), ContractError);
}

TEST_CASE("gate and decode: one encoder call, threshold semantics") {
  Rng rng(61);
  RnntModel asr = SmallAsr(3, 62);
  LidClassifier clf(SmallLid(16), {"L0", "L1", "L2"}, 63);
  RandomizeParams(&clf.params(), &rng, 1.0);
  const SequenceTensor x(RandomMatrix(6, 3, &rng));

  asr.ResetEncodeCalls();
  const GateResult open = GateAndDecode(asr, clf, x, "L1", 0.0);
  CHECK(asr.encode_calls() == 1);
  CHECK(open.accepted);
  CHECK(open.transcript == asr.GreedyDecode(asr.Encode(x)));
  CHECK(std::abs(open.probabilities.sum() - 1.0) <= 1e-12);

  asr.ResetEncodeCalls();
  const GateResult shut = GateAndDecode(asr, clf, x, "L1", 1.0);
  CHECK(asr.encode_calls() == 1);
  CHECK_FALSE(shut.accepted);
  CHECK(shut.transcript.empty());
  CHECK(shut.top_language == ArgMax(shut.probabilities));

  CHECK_THROWS_AS(GateAndDecode(asr, clf, x, "L7", 0.5), ContractError);
  CHECK_THROWS_AS(GateAndDecode(asr, clf, x, "L0", 1.5), ContractError);
}

TEST_CASE("score trials: layout, CSV and perfect separation") {
  Rng rng(71);
  const RnntModel asr = SmallAsr(3, 72);
  LidClassifier clf(SmallLid(16), {"L0", "L1", "L2"}, 73);
  const SequenceTensor x(RandomMatrix(4, 3, &rng));
  const std::vector<LidExample> one = {{"u1", &x, 2}};
  const auto trials = ScoreTrials(asr, clf, one);
  REQUIRE(trials.size() == 3);
  int targets = 0;
  for (const auto &t : trials) targets += t.is_target;
  CHECK(targets == 1);
  CHECK(trials[2].is_target);
  std::ostringstream os;
  WriteTrialCsv(os, trials, clf.languages());
  CHECK(os.str().rfind("utt_id,lang,score,is_target\nu1,L0,", 0) == 0);
  CHECK(os.str().find("\nu1,L2,") != std::string::npos);
  CHECK_THROWS_AS(ScoreTrials(asr, clf, {}), ContractError);

  // A classifier putting 1 - eps on the truth separates targets perfectly.
  std::vector<LidTrial> perfect;
  for (int u = 0; u < 4; ++u)
    for (int l = 0; l < 3; ++l)
      perfect.push_back({"u", l, l == u % 3 ? 1.0 - 1e-9 : 5e-10, l == u % 3});
  CHECK(EqualErrorRate(PooledTrials(perfect)) == 0.0);
}

}  // namespace rntm
