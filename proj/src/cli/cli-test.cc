// cli/cli-test.cc

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

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "base/binary-io.h"
#include "base/rntm-common.h"
#include "cli/cli.h"
#include "cli/experiment-config.h"
#include "cli/pipelines.h"
#include "doctest.h"
#include "metrics/report.h"
#include "transducer/rnnt-model.h"

namespace rntm {
namespace {

namespace fs = std::filesystem;

// A corpus and model small enough that every command runs in well under a
// second.
const char *kTinyConfig = R"({
  "seed": 7,
  "corpus": {"num_languages": 2, "inventory_size": 4, "feature_dim": 6,
             "train": 24, "dev": 12, "test": 12, "durations": [10, 30]},
  "model": {"encoder_layers": 1, "encoder_hidden": 6, "embed_dim": 4,
            "predictor_hidden": 6, "joint_hidden": 6},
  "asr": {"epochs": 2},
  "ser": {"epochs": 3, "patience": 2},
  "lid": {"epochs": 2, "lstm_hidden": 4, "num_heads": 2, "head_dim": 2, "dev_fraction": 0.25}
})";

struct Workspace {
  fs::path root;
  std::string config;

  explicit Workspace(const std::string &name, const std::string &text = kTinyConfig) {
    root = fs::temp_directory_path() / ("rntm-cli-test-" + name);
    fs::remove_all(root);
    fs::create_directories(root);
    auto j = nlohmann::json::parse(text);
    if (!j.contains("data_dir")) j["data_dir"] = (root / "data").string();
    if (!j.contains("output_dir")) j["output_dir"] = (root / "out").string();
    config = (root / "config.json").string();
    WriteFileBytes(config, j.dump(1));
  }
  ~Workspace() { fs::remove_all(root); }

  std::string Path(const std::string &rel) const { return (root / rel).string(); }
  std::string Read(const std::string &rel) const { return ReadFileBytes(Path(rel)); }
};

struct Result {
  int code;
  std::string out, err;
};

Result Run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

void Prepare(const Workspace &ws) {
  REQUIRE(Run({"gen-data", "--config", ws.config}).code == 0);
  REQUIRE(Run({"train-asr", "--config", ws.config}).code == 0);
}

}  // namespace

TEST_CASE("cli: gen-data is reproducible") {
  Workspace ws("gen");
  const Result a = Run({"gen-data", "--config", ws.config});
  CHECK(a.code == 0);
  const std::string report = ws.Read("data/gen-data-report.csv");
  const std::string train = ws.Read("data/train.sync");
  CHECK(Run({"gen-data", "--config", ws.config, "--data-dir", ws.Path("again")}).code == 0);
  CHECK(ws.Read("again/train.sync") == train);
  CHECK(ws.Read("again/manifest.json") == ws.Read("data/manifest.json"));
  CHECK(Run({"gen-data", "--config", ws.config}).code == 0);
  CHECK(ws.Read("data/gen-data-report.csv") == report);
  CHECK(report.find("# config_hash=") != std::string::npos);
  CHECK(report.find(" seed=7 command=gen-data\n") != std::string::npos);
  CHECK(a.out.find("seed=7") != std::string::npos);

  CHECK(Run({"gen-data", "--config", ws.config, "--seed", "8", "--data-dir", ws.Path("s8")}).code == 0);
  CHECK(ws.Read("s8/train.sync") != train);
}

TEST_CASE("cli: usage and configuration errors exit 1") {
  Workspace ws("usage");
  Result r = Run({"gen-data", "--config", ws.config, "--bogus-flag"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--bogus-flag") != std::string::npos);
  CHECK(r.err.find('\n') == r.err.size() - 1);

  CHECK(Run({}).code == 1);
  CHECK(Run({"no-such-command"}).code == 1);
  CHECK(Run({"gen-data"}).code == 1);
  CHECK(Run({"gen-data", "--config", ws.Path("missing.json")}).code == 1);

  WriteFileBytes(ws.Path("bad.json"), R"({"seed": 1, "asr": {"epochs": 2, "epoch": 3}})");
  r = Run({"gen-data", "--config", ws.Path("bad.json")});
  CHECK(r.code == 1);
  CHECK(r.err.find("asr.epoch") != std::string::npos);

  WriteFileBytes(ws.Path("noseed.json"), R"({"corpus": {}})");
  r = Run({"gen-data", "--config", ws.Path("noseed.json")});
  CHECK(r.code == 1);
  CHECK(r.err.find("seed") != std::string::npos);

  CHECK(Run({"--help"}).code == 0);
}

TEST_CASE("cli: config hash tracks content") {
  const auto j = nlohmann::json::parse(kTinyConfig);
  const ExperimentConfig a = ExperimentConfig::FromJson(j);
  auto j2 = j;
  j2["asr"]["epochs"] = 3;
  CHECK(ExperimentConfig::FromJson(j2).Hash() != a.Hash());
  CHECK(ExperimentConfig::FromJson(nlohmann::json::parse(a.ToJson().dump())).Hash() == a.Hash());
  CHECK(a.model.feature_dim == 6);
}

TEST_CASE("cli: training, freezing, evaluation and decoding") {
  Workspace ws("train");
  Prepare(ws);
  const std::string asr_ckpt = ws.Path("out/asr.ckpt");
  CHECK(ws.Read("out/asr-history.csv").rfind("epoch,train_loss,dev_cer\n", 0) == 0);

  // Frozen encoder: the report proves it.
  Result r = Run({"train-ser", "--config", ws.config, "--base", asr_ckpt, "--name", "frozen",
                  "--freeze", "encoder.*"});
  CHECK(r.code == 0);
  RunReport frozen = ReadRunReport(ws.Path("out/frozen-report.csv"));
  CHECK(frozen.Get("encoder_unchanged") == "1");
  CHECK(frozen.Get("encoder_checksum_before") == frozen.Get("encoder_checksum_after"));
  CHECK(frozen.Get("freeze") == "encoder.*");

  REQUIRE(Run({"train-ser", "--config", ws.config, "--base", asr_ckpt}).code == 0);
  const RunReport whole = ReadRunReport(ws.Path("out/ser-report.csv"));
  CHECK(whole.Get("encoder_unchanged") == "0");
  const RnntModel ser = RnntModel::Load(ws.Path("out/ser.ckpt"));
  CHECK(ser.vocab().tag_ids().size() == 4);
  CHECK(ser.vocab().Symbol(ser.vocab().Size() - 1) == "<SAD>");

  REQUIRE(Run({"train-ser", "--config", ws.config, "--base", asr_ckpt, "--no-tags", "--epochs",
               "2", "--name", "base"}).code == 0);
  const RunReport base = ReadRunReport(ws.Path("out/base-report.csv"));
  CHECK(base.Get("selected_epoch") == "2");
  CHECK(RnntModel::Load(ws.Path("out/base.ckpt")).vocab().tag_ids().empty());

  // eval leaves its input untouched and is reproducible.
  const std::string ckpt_bytes = ws.Read("out/ser.ckpt");
  REQUIRE(Run({"eval", "--config", ws.config, "--model", ws.Path("out/ser.ckpt")}).code == 0);
  const std::string eval_csv = ws.Read("out/eval-eval.csv");
  CHECK(eval_csv.rfind("utt_id,ref,hyp,cer,wer,true_emotion,pred_emotion\n", 0) == 0);
  REQUIRE(Run({"eval", "--config", ws.config, "--model", ws.Path("out/ser.ckpt")}).code == 0);
  CHECK(ws.Read("out/eval-eval.csv") == eval_csv);
  CHECK(ws.Read("out/ser.ckpt") == ckpt_bytes);
  CHECK(ReadRunReport(ws.Path("out/eval-report.csv")).Get("utterances") == "12");

  // A tag-free model can only ever predict the neutral fallback.
  REQUIRE(Run({"decode", "--config", ws.config, "--model", asr_ckpt, "--output",
               ws.Path("plain.tsv")}).code == 0);
  std::istringstream plain(ws.Read("plain.tsv"));
  std::string line;
  int lines = 0;
  while (std::getline(plain, line)) {
    ++lines;
    const auto tab = [&](int k) {
      size_t p = 0;
      for (int i = 0; i < k; ++i) p = line.find('\t', p) + 1;
      return line.substr(p, line.find('\t', p) - p);
    };
    CHECK(tab(2) == "NEUTRAL");
    CHECK(tab(3) == "-");
  }
  CHECK(lines == 12);

  // Language-gated decoding.
  REQUIRE(Run({"train-lid", "--config", ws.config, "--model", ws.Path("out/ser.ckpt")}).code == 0);
  const std::string lid = ws.Path("out/lid.ckpt");
  auto decode = [&](const std::string &threshold, const std::string &out) {
    return Run({"decode", "--config", ws.config, "--model", ws.Path("out/ser.ckpt"), "--lid", lid,
                "--expected-lang", "L0", "--gate-threshold", threshold, "--output", ws.Path(out)});
  };
  REQUIRE(decode("0", "open.tsv").code == 0);
  CHECK(ws.Read("open.tsv").find("<REJECTED") == std::string::npos);
  CHECK(ws.Read("open.tsv").find("\tL0:") != std::string::npos);
  REQUIRE(decode("0", "open2.tsv").code == 0);
  CHECK(ws.Read("open.tsv") == ws.Read("open2.tsv"));
  REQUIRE(decode("1", "shut.tsv").code == 0);
  CHECK(ReadRunReport(ws.Path("shut.tsv.report.csv")).Get("rejected") == "12");
  CHECK(ws.Read("shut.tsv").find("\t<REJECTED:L") != std::string::npos);
  CHECK(decode("0.5", "x.tsv").code == 0);
  r = Run({"decode", "--config", ws.config, "--model", asr_ckpt, "--expected-lang", "L0",
           "--output", ws.Path("y.tsv")});
  CHECK(r.code == 1);

  // lid-eer writes one trial file per duration and the EER summary.
  REQUIRE(Run({"lid-eer", "--config", ws.config, "--model", ws.Path("out/ser.ckpt"), "--lid",
               lid}).code == 0);
  const std::string eer = ws.Read("out/lid-eer-eer.csv");
  CHECK(eer.rfind("duration_frames,eer\n10,", 0) == 0);
  CHECK(eer.find("\n30,") != std::string::npos);
  CHECK(ws.Read("out/lid-eer-trials-dur10.csv").rfind("utt_id,lang,score,is_target\n", 0) == 0);

  // Fine-tuned LID writes its own copy of the transducer.
  REQUIRE(Run({"train-lid", "--config", ws.config, "--model", asr_ckpt, "--name", "ft",
               "--finetune-encoder"}).code == 0);
  const RunReport ft = ReadRunReport(ws.Path("out/ft-report.csv"));
  CHECK(ft.Get("finetune_encoder") == "1");
  CHECK(ft.Get("encoder_checksum_before") != ft.Get("encoder_checksum_after"));
  CHECK(fs::exists(ws.Path("out/ft-asr.ckpt")));
}

TEST_CASE("cli: incompatible checkpoints exit 1") {
  Workspace ws("compat");
  Prepare(ws);
  auto j = nlohmann::json::parse(kTinyConfig);
  j["corpus"]["inventory_size"] = 5;
  j["data_dir"] = ws.Path("other");
  WriteFileBytes(ws.Path("other.json"), j.dump());
  REQUIRE(Run({"gen-data", "--config", ws.Path("other.json")}).code == 0);
  const Result r = Run({"decode", "--config", ws.Path("other.json"), "--model",
                        ws.Path("out/asr.ckpt"), "--output", ws.Path("z.tsv")});
  CHECK(r.code == 1);
  CHECK(r.err.find("vocabulary") != std::string::npos);
  CHECK(Run({"eval", "--config", ws.config, "--model", ws.Path("nope.ckpt")}).code == 1);
}

TEST_CASE("cli: non-finite training loss exits 2") {
  Workspace ws("nan");
  Prepare(ws);
  RnntModel m = RnntModel::Load(ws.Path("out/asr.ckpt"));
  m.params().Get("joint.b").value[0] = std::numeric_limits<double>::quiet_NaN();
  m.Save(ws.Path("nan.ckpt"));
  const Result r = Run({"train-ser", "--config", ws.config, "--base", ws.Path("nan.ckpt")});
  CHECK(r.code == 2);
  CHECK(r.err.find("non-finite") != std::string::npos);
}

TEST_CASE("cli: results do not depend on RNTM_THREADS") {
  Workspace ws("threads");
  REQUIRE(Run({"gen-data", "--config", ws.config}).code == 0);
  ::setenv("RNTM_THREADS", "1", 1);
  REQUIRE(Run({"train-asr", "--config", ws.config, "--name", "one"}).code == 0);
  ::setenv("RNTM_THREADS", "3", 1);
  REQUIRE(Run({"train-asr", "--config", ws.config, "--name", "three"}).code == 0);
  ::unsetenv("RNTM_THREADS");
  CHECK(ws.Read("out/one.ckpt") == ws.Read("out/three.ckpt"));
  CHECK(ws.Read("out/one-history.csv") == ws.Read("out/three-history.csv"));
}

}  // namespace rntm
