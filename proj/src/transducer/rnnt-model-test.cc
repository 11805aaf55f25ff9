// transducer/rnnt-model-test.cc

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
#include <filesystem>
#include <limits>
#include <vector>

#include "base/rntm-common.h"
#include "doctest.h"
#include "nnet/grad-check.h"
#include "nnet/nnet-test-util.h"
#include "transducer/greedy-decode.h"
#include "transducer/rnnt-model.h"
#include "transducer/trainer.h"

namespace rntm {
namespace {

using testing::RandomizeParams;
using testing::RandomMatrix;

RnntConfig SmallConfig() {
  RnntConfig c;
  c.feature_dim = 3;
  c.encoder_layers = 2;
  c.encoder_hidden = 3;
  c.embed_dim = 2;
  c.predictor_hidden = 3;
  c.joint_hidden = 4;
  return c;
}

Vocab SmallVocab() { return Vocab({"<b>", "a", "b", "c", "<X>"}, 0, {4}); }

SequenceTensor RandomFeatures(int T, int d, Rng *rng) {
  return SequenceTensor(RandomMatrix(T, d, rng));
}

// Scripted joint network for the greedy search: logits depend only on the
// frame and on how many symbols were emitted within that frame.
struct StubScorer {
  struct State {
    int last_frame = -1;
    int emitted_in_frame = 0;
  };
  int vocab_size = 4;
  int blank = 0;
  int symbol = 2;
  int emit_per_frame = 0;  // < 0: never prefer blank
  bool all_equal = false;
  mutable int current_frame = 0;

  State Start() const { return {}; }
  Vector Logits(int t, const State &s) const {
    current_frame = t;
    Vector v = Vector::Zero(vocab_size);
    if (all_equal) return v;
    const int emitted = s.last_frame == t ? s.emitted_in_frame : 0;
    const bool emit = emit_per_frame < 0 || emitted < emit_per_frame;
    v[emit ? symbol : blank] = 1.0;
    return v;
  }
  State Advance(const State &s, int) const {
    State n;
    n.last_frame = current_frame;
    n.emitted_in_frame = (s.last_frame == current_frame ? s.emitted_in_frame : 0) + 1;
    return n;
  }
};
static_assert(TransducerScorer<StubScorer>);

}  // namespace

TEST_CASE("greedy decode: blank-dominant joint emits nothing") {
  StubScorer s;
  s.emit_per_frame = 0;
  CHECK(GreedyDecode(s, 5, s.blank, 4).empty());
}

TEST_CASE("greedy decode: one symbol then blank per frame") {
  StubScorer s;
  s.emit_per_frame = 1;
  CHECK(GreedyDecode(s, 3, s.blank, 4) == std::vector<int>{2, 2, 2});
}

TEST_CASE("greedy decode: emissions per frame are capped") {
  StubScorer s;
  s.emit_per_frame = -1;
  for (int cap = 1; cap <= 5; ++cap)
    CHECK(GreedyDecode(s, 3, s.blank, cap).size() == static_cast<size_t>(3 * cap));
  CHECK_THROWS_AS(GreedyDecode(s, 3, s.blank, 0), ContractError);
}

TEST_CASE("greedy decode: ties go to the lowest id") {
  StubScorer s;
  s.all_equal = true;
  s.blank = 0;
  CHECK(GreedyDecode(s, 3, 0, 4).empty());
  CHECK(GreedyDecode(s, 2, 3, 2) == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("rnnt model: parameter layout") {
  RnntModel m(RnntConfig{}, SmallVocab(), 1);
  const ParamStore &p = m.params();
  CHECK(p.Contains("encoder.l0.fwd.w_x"));
  CHECK(p.Get("encoder.l0.fwd.w_x").shape == std::vector<int>{128, 16});
  CHECK(p.Get("encoder.l1.bwd.w_x").shape == std::vector<int>{128, 64});
  CHECK(p.Get("predictor.embed").shape == std::vector<int>{5, 16});
  CHECK(p.Get("predictor.lstm.w_h").shape == std::vector<int>{128, 32});
  CHECK(p.Get("joint.enc.w").shape == std::vector<int>{32, 64});
  CHECK(p.Get("joint.pred.w").shape == std::vector<int>{32, 32});
  CHECK(p.Get("joint.out.w").shape == std::vector<int>{5, 32});
  CHECK(p.Get("joint.out.b").shape == std::vector<int>{5});
  CHECK_FALSE(p.Contains("joint.enc.b"));
  for (const auto &name : p.Names())
    CHECK((name.rfind("encoder.", 0) == 0 || name.rfind("predictor.", 0) == 0 ||
           name.rfind("joint.", 0) == 0));
}

TEST_CASE("rnnt model: same seed, same parameters") {
  RnntModel a(SmallConfig(), SmallVocab(), 42), b(SmallConfig(), SmallVocab(), 42),
      c(SmallConfig(), SmallVocab(), 43);
  CHECK(a.params().Checksum() == b.params().Checksum());
  CHECK(a.params().Checksum() != c.params().Checksum());
}

TEST_CASE("encode: zero weights give zero embeddings") {
  RnntModel m(SmallConfig(), SmallVocab(), 1);
  for (auto &[name, p] : m.params())
    if (name.rfind("encoder.", 0) == 0) std::fill(p.value.begin(), p.value.end(), 0.0);
  Rng rng(2);
  const SequenceTensor enc = m.Encode(RandomFeatures(5, 3, &rng));
  CHECK(enc.NumFrames() == 5);
  CHECK(enc.Dim() == 6);
  CHECK(enc.frames().isZero(0.0));
}

TEST_CASE("encode: deterministic, counted, width checked") {
  RnntModel m(SmallConfig(), SmallVocab(), 1);
  Rng rng(3);
  const SequenceTensor x = RandomFeatures(6, 3, &rng);
  m.ResetEncodeCalls();
  const SequenceTensor a = m.Encode(x), b = m.Encode(x);
  CHECK(a == b);
  CHECK(m.encode_calls() == 2);
  CHECK_THROWS_AS(m.Encode(RandomFeatures(6, 4, &rng)), ContractError);
}

TEST_CASE("encode: equals composing BiLSTM layers by hand") {
  RnntModel m(RnntConfig{}, SmallVocab(), 7);
  Rng rng(4);
  const SequenceTensor x = RandomFeatures(4, 16, &rng);
  BiLstm l0("encoder.l0", 16, 32), l1("encoder.l1", 64, 32);
  const Matrix expect = l1.Forward(m.params(), l0.Forward(m.params(), x.frames()));
  CHECK((m.Encode(x).frames() - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rnnt model: lattice logits equal step-by-step joint evaluation") {
  RnntModel m(SmallConfig(), SmallVocab(), 5);
  Rng rng(6);
  const SequenceTensor enc = m.Encode(RandomFeatures(4, 3, &rng));
  const std::vector<int> y = {3, 1, 4};
  const Matrix lattice = m.LatticeLogits(enc, y);
  const Matrix proj = m.ProjectEncoder(enc);
  RnntModel::PredictorState s = m.PredictorStart();
  for (int u = 0; u <= 3; ++u) {
    for (int t = 0; t < 4; ++t) {
      const Vector expect = m.JointLogits(proj.row(t).transpose(), s.lstm.h);
      CHECK((lattice.row(t * 4 + u).transpose() - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
    if (u < 3) s = m.PredictorAdvance(s, y[u]);
  }
  CHECK(m.Loss(RandomFeatures(4, 3, &rng), y) > 0.0);
}

TEST_CASE("rnnt model: full backprop matches finite differences") {
  Rng rng(8);
  for (int rep = 0; rep < 3; ++rep) {
    RnntModel m(SmallConfig(), SmallVocab(), 100 + rep);
    const SequenceTensor x = RandomFeatures(3 + rep, 3, &rng);
    const std::vector<int> all = {1, 4, 2};
    const std::vector<int> y(all.begin(), all.begin() + rep);
    m.params().ZeroGrad();
    const double loss = m.LossAndGrad(x, y, &m.params());
    CHECK(loss == doctest::Approx(m.Loss(x, y)).epsilon(1e-12));
    GradCheckOptions opts;
    opts.eps = 1e-5;
    opts.max_coords = 64;
    opts.seed = 50 + rep;
    const GradCheckResult r =
        FiniteDiffCheck([&](const ParamStore &) { return m.Loss(x, y); }, &m.params(), opts);
    REQUIRE(r.ok);
    CHECK(r.coords_checked == 64);
    INFO("worst: " << r.worst_param << "[" << r.worst_index << "]");
    CHECK(r.max_rel_error < 1e-4);
  }
}

TEST_CASE("rnnt model: every tensor gets exercised by the gradient check") {
  RnntModel m(SmallConfig(), SmallVocab(), 9);
  Rng rng(10);
  const SequenceTensor x = RandomFeatures(3, 3, &rng);
  const std::vector<int> y = {2, 4};
  m.params().ZeroGrad();
  m.LossAndGrad(x, y, &m.params());
  for (const auto &name : m.params().Names()) {
    GradCheckOptions opts;
    opts.eps = 1e-5;
    opts.max_coords = 8;
    opts.pattern = name;
    const GradCheckResult r =
        FiniteDiffCheck([&](const ParamStore &) { return m.Loss(x, y); }, &m.params(), opts);
    INFO(name << " worst index " << r.worst_index);
    CHECK(r.max_rel_error < 1e-4);
  }
}

TEST_CASE("rnnt model: frozen encoder receives no gradient") {
  RnntModel m(SmallConfig(), SmallVocab(), 11);
  Rng rng(12);
  const SequenceTensor x = RandomFeatures(4, 3, &rng);
  const std::vector<int> y = {1, 2};
  ParamStore full = m.params().GradientBuffer();
  m.LossAndGrad(x, y, &full);
  ParamStore frozen = m.params().GradientBuffer();
  frozen.ApplyFreezePatterns({"encoder.*"});
  m.LossAndGrad(x, y, &frozen);
  for (const auto &[name, p] : frozen) {
    const auto &g = full.Get(name).grad;
    if (name.rfind("encoder.", 0) == 0) {
      for (double v : p.grad) CHECK(v == 0.0);
    } else {
      for (size_t i = 0; i < g.size(); ++i) CHECK(p.grad[i] == g[i]);
    }
  }
}

TEST_CASE("rnnt model: greedy decode is deterministic and bounded") {
  Rng rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    RnntModel m(SmallConfig(), SmallVocab(), 200 + rep);
    RandomizeParams(&m.params(), &rng, 1.5);
    const int T = static_cast<int>(rng.UniformInt(1, 7));
    const SequenceTensor enc = m.Encode(RandomFeatures(T, 3, &rng));
    const int cap = static_cast<int>(rng.UniformInt(1, 4));
    const auto a = m.GreedyDecode(enc, cap);
    CHECK(a == m.GreedyDecode(enc, cap));
    CHECK(a.size() <= static_cast<size_t>(T * cap));
    for (int k : a) CHECK(k != m.vocab().blank_id());
  }
}

TEST_CASE("rnnt model: greedy decode follows the joint argmax") {
  // Re-run the search by hand using the model's own building blocks.
  RnntModel m(SmallConfig(), SmallVocab(), 14);
  Rng rng(15);
  RandomizeParams(&m.params(), &rng, 2.0);
  const SequenceTensor enc = m.Encode(RandomFeatures(6, 3, &rng));
  const Matrix proj = m.ProjectEncoder(enc);
  std::vector<int> expect;
  RnntModel::PredictorState s = m.PredictorStart();
  for (int t = 0; t < 6; ++t) {
    for (int n = 0; n < 4; ++n) {
      const Vector l = m.JointLogits(proj.row(t).transpose(), s.lstm.h);
      int best = 0;
      for (int k = 1; k < l.size(); ++k)
        if (l[k] > l[best]) best = k;
      if (best == 0) break;
      expect.push_back(best);
      s = m.PredictorAdvance(s, best);
    }
  }
  CHECK(m.GreedyDecode(enc, 4) == expect);
}

TEST_CASE("train step: all parameters frozen leaves the model bit-identical") {
  RnntModel m(SmallConfig(), SmallVocab(), 16);
  Rng rng(17);
  const SequenceTensor x = RandomFeatures(4, 3, &rng);
  std::vector<TrainingExample> batch = {{&x, {1, 2}}};
  m.params().ApplyFreezePatterns({"*"});
  const uint64_t before = m.params().Checksum();
  TrainStep(&m, batch, TrainStepOptions{});
  CHECK(m.params().Checksum() == before);
}

TEST_CASE("train step: frozen encoder is untouched, the rest moves") {
  RnntModel m(SmallConfig(), SmallVocab(), 18);
  Rng rng(19);
  const SequenceTensor x = RandomFeatures(4, 3, &rng), x2 = RandomFeatures(5, 3, &rng);
  std::vector<TrainingExample> batch = {{&x, {1, 2}}, {&x2, {3}}};
  m.params().ApplyFreezePatterns({"encoder.*"});
  const uint64_t enc = m.params().Checksum("encoder.*");
  const uint64_t pred = m.params().Checksum("predictor.*");
  const uint64_t joint = m.params().Checksum("joint.*");
  TrainStep(&m, batch, TrainStepOptions{});
  CHECK(m.params().Checksum("encoder.*") == enc);
  CHECK(m.params().Checksum("predictor.*") != pred);
  CHECK(m.params().Checksum("joint.*") != joint);
  for (const auto &[name, p] : m.params())
    for (double g : p.grad) CHECK(g == 0.0);
}

TEST_CASE("train step: small step lowers the utterance loss") {
  Rng rng(20);
  for (int rep = 0; rep < 3; ++rep) {
    RnntModel base(SmallConfig(), SmallVocab(), 300 + rep);
    const SequenceTensor x = RandomFeatures(5, 3, &rng);
    std::vector<TrainingExample> batch = {{&x, {1, 3, 2}}};
    const double before = base.Loss(x, batch[0].target);
    double lr = 1e-3;
    bool decreased = false;
    for (int attempt = 0; attempt < 10 && !decreased; ++attempt, lr /= 2) {
      RnntModel m = base;
      TrainStepOptions opts;
      opts.learning_rate = lr;
      CHECK(TrainStep(&m, batch, opts) == doctest::Approx(before).epsilon(1e-12));
      decreased = m.Loss(x, batch[0].target) < before;
    }
    CHECK(decreased);
  }
}

TEST_CASE("train step: result independent of thread count") {
  Rng rng(21);
  std::vector<SequenceTensor> xs;
  for (int i = 0; i < 5; ++i) xs.push_back(RandomFeatures(3 + i, 3, &rng));
  std::vector<TrainingExample> batch;
  for (int i = 0; i < 5; ++i) batch.push_back({&xs[i], {1 + i % 3, 4}});
  RnntModel a(SmallConfig(), SmallVocab(), 22), b = a;
  TrainStepOptions o1, o3;
  o3.num_threads = 3;
  const double la = TrainStep(&a, batch, o1), lb = TrainStep(&b, batch, o3);
  CHECK(la == lb);
  CHECK(a.params().Checksum() == b.params().Checksum());
}

TEST_CASE("train step: gradient is the batch mean") {
  Rng rng(23);
  const SequenceTensor x = RandomFeatures(4, 3, &rng);
  RnntModel a(SmallConfig(), SmallVocab(), 24), b = a;
  const std::vector<TrainingExample> one = {{&x, {2, 1}}};
  const std::vector<TrainingExample> two = {{&x, {2, 1}}, {&x, {2, 1}}};
  TrainStep(&a, one, TrainStepOptions{});
  TrainStep(&b, two, TrainStepOptions{});
  for (const auto &[name, p] : a.params()) {
    const auto &q = b.params().Get(name).value;
    for (size_t i = 0; i < q.size(); ++i) CHECK(std::abs(p.value[i] - q[i]) < 1e-15);
  }
}

TEST_CASE("train step: non-finite loss names the utterance and leaves the model alone") {
  RnntModel m(SmallConfig(), SmallVocab(), 25);
  Rng rng(26);
  const SequenceTensor x = RandomFeatures(4, 3, &rng);
  // Only the second utterance uses symbol 3.
  auto &embed = m.params().Get("predictor.embed");
  embed.value[3 * 2] = std::numeric_limits<double>::quiet_NaN();
  const uint64_t before = m.params().Checksum();
  std::vector<TrainingExample> batch = {{&x, {1, 2}}, {&x, {3}}, {&x, {1}}};
  try {
    TrainStep(&m, batch, TrainStepOptions{});
    FAIL("expected NumericalError");
  } catch (const NumericalError &e) {
    CHECK(std::string(e.what()).find("batch index 1") != std::string::npos);
  }
  CHECK(m.params().Checksum() == before);
}

TEST_CASE("train step: contract errors") {
  RnntModel m(SmallConfig(), SmallVocab(), 27);
  Rng rng(28);
  const SequenceTensor x = RandomFeatures(4, 3, &rng);
  std::vector<TrainingExample> batch = {{&x, {1}}};
  CHECK_THROWS_AS(TrainStep(&m, {}, TrainStepOptions{}), ContractError);
  TrainStepOptions bad;
  bad.learning_rate = 0.0;
  CHECK_THROWS_AS(TrainStep(&m, batch, bad), ContractError);
  std::vector<TrainingExample> with_blank = {{&x, {0}}};
  CHECK_THROWS_AS(TrainStep(&m, with_blank, TrainStepOptions{}), ContractError);
}

TEST_CASE("rnnt model: checkpoint round trip") {
  RnntModel m(SmallConfig(), SmallVocab(), 29);
  m.params().ApplyFreezePatterns({"encoder.*"});
  const auto path = std::filesystem::temp_directory_path() / "rntm-rnnt-model-test.ckpt";
  m.Save(path.string());
  const RnntModel r = RnntModel::Load(path.string());
  std::filesystem::remove(path);
  CHECK(r.config() == m.config());
  CHECK(r.vocab() == m.vocab());
  CHECK(r.params().Checksum() == m.params().Checksum());
  CHECK(r.params().AllFrozen("encoder.*"));
  CHECK_FALSE(r.params().Get("joint.out.w").frozen);
  Rng rng(30);
  const SequenceTensor x = RandomFeatures(5, 3, &rng);
  CHECK(r.Loss(x, std::vector<int>{1, 2}) == m.Loss(x, std::vector<int>{1, 2}));

  Checkpoint other = m.ToCheckpoint();
  other.metadata["kind"] = "lid";
  CHECK_THROWS_AS(RnntModel::FromCheckpoint(other), ContractError);
}

TEST_CASE("rnnt model: extending the vocabulary keeps old rows") {
  RnntModel m(SmallConfig(), Vocab({"<b>", "a", "b"}, 0), 31);
  const RnntModel old = m;
  m.ExtendVocab(Vocab({"<b>", "a", "b", "<H>", "<S>"}, 0, {3, 4}), 32);
  CHECK(m.vocab().Size() == 5);
  const auto &e0 = old.params().Get("predictor.embed").value;
  const auto &e1 = m.params().Get("predictor.embed").value;
  REQUIRE(e1.size() == 5 * 2);
  for (size_t i = 0; i < e0.size(); ++i) CHECK(e1[i] == e0[i]);
  CHECK(m.params().Get("joint.out.w").shape == std::vector<int>{5, 4});
  CHECK(m.params().Get("joint.out.b").shape == std::vector<int>{5});
  CHECK(m.params().Checksum("encoder.*") == old.params().Checksum("encoder.*"));
  Rng rng(33);
  const SequenceTensor enc = m.Encode(RandomFeatures(3, 3, &rng));
  CHECK(m.JointLogits(m.ProjectEncoder(enc).row(0).transpose(), m.PredictorStart().lstm.h).size() ==
        5);
  CHECK_THROWS_AS(m.ExtendVocab(Vocab({"<b>", "x", "b", "<H>", "<S>", "y"}, 0), 1),
                  ContractError);
}

TEST_CASE("vocab: validation and rendering") {
  CHECK_THROWS_AS(Vocab({"a", "a"}, 0), ContractError);
  CHECK_THROWS_AS(Vocab({"a", "b"}, 2), ContractError);
  CHECK_THROWS_AS(Vocab({"a", "b"}, 0, {0}), ContractError);
  CHECK_THROWS_AS(Vocab({"a", "b"}, 0, {5}), ContractError);
  const Vocab v({"<b>", "A", "B", " ", "<HAPPY>"}, 0, {4});
  CHECK(v.IdOf("B") == 2);
  CHECK(v.IdOf("Z") == -1);
  CHECK(v.IsTag(4));
  CHECK_FALSE(v.IsTag(1));
  CHECK(v.Render(v.ToIds({"A", "B", " ", "A", "<HAPPY>"})) == "AB A <HAPPY>");
  CHECK_THROWS_AS(v.ToIds({"Q"}), ContractError);
  CHECK(Vocab::FromJson(v.ToJson()) == v);
}

}  // namespace rntm
