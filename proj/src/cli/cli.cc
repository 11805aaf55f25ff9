// cli/cli.cc

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

#include "cli/cli.h"

#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "base/rntm-common.h"
#include "cli/pipelines.h"

namespace rntm {

namespace {

struct CommonFlags {
  std::string config;
  std::optional<uint64_t> seed;
  std::string data_dir, out_dir;
};

void AddCommon(CLI::App *cmd, CommonFlags *f, bool with_out_dir = true) {
  cmd->add_option("--config", f->config, "Experiment configuration (JSON)")->required();
  cmd->add_option("--seed", f->seed, "Overrides the configuration seed");
  cmd->add_option("--data-dir", f->data_dir, "Corpus directory (default: config data_dir)");
  if (with_out_dir)
    cmd->add_option("--out-dir", f->out_dir, "Output directory (default: config output_dir)");
}

RunContext MakeContext(const CommonFlags &f, const std::string &command) {
  RunContext ctx;
  ctx.config = ExperimentConfig::Load(f.config);
  if (f.seed) ctx.config.seed = *f.seed;
  ctx.command = command;
  ctx.data_dir = f.data_dir.empty() ? ctx.config.data_dir : f.data_dir;
  ctx.out_dir = f.out_dir.empty() ? ctx.config.output_dir : f.out_dir;
  ctx.num_threads = DefaultNumThreads();
  return ctx;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"rntm: transducer speech recognition with emotion tags and language ID"};
  app.name("rntm");
  app.require_subcommand(1);

  CommonFlags common;
  std::string name, model, lid, split = "test", expected_lang, output;
  std::vector<std::string> freeze;
  bool no_freeze = false, no_tags = false, finetune = false;
  std::optional<int> epochs;
  std::optional<double> threshold;

  auto *gen = app.add_subcommand("gen-data", "Generate the synthetic corpus");
  AddCommon(gen, &common, false);

  auto *asr = app.add_subcommand("train-asr", "Train the base transducer without emotion tags");
  AddCommon(asr, &common);
  asr->add_option("--name", name, "Artifact name (default: asr)");

  auto *ser = app.add_subcommand("train-ser", "Fine-tune a transducer on emotion-tagged targets");
  AddCommon(ser, &common);
  ser->add_option("--base", model, "Base transducer checkpoint")->required();
  ser->add_option("--name", name, "Artifact name (default: ser)");
  ser->add_option("--freeze", freeze, "Glob of tensors to freeze (repeatable; replaces config)");
  ser->add_flag("--no-freeze", no_freeze, "Freeze nothing, whatever the config says");
  ser->add_flag("--no-tags", no_tags, "Train on plain transcripts (emotion-free baseline)");
  ser->add_option("--epochs", epochs, "Overrides ser.epochs");

  auto *tlid = app.add_subcommand("train-lid", "Train the language classifier on encoder output");
  AddCommon(tlid, &common);
  tlid->add_option("--model", model, "Transducer checkpoint providing the encoder")->required();
  tlid->add_option("--name", name, "Artifact name (default: lid)");
  tlid->add_flag("--finetune-encoder", finetune, "Also tune the transducer encoder");

  auto *eval = app.add_subcommand("eval", "Score transcripts and emotions on a split");
  AddCommon(eval, &common);
  eval->add_option("--model", model, "Transducer checkpoint")->required();
  eval->add_option("--split", split, "Corpus split (default: test)");
  eval->add_option("--name", name, "Artifact name (default: eval)");

  auto *dec = app.add_subcommand("decode", "Write tagged transcripts, optionally language-gated");
  AddCommon(dec, &common, false);
  dec->add_option("--model", model, "Transducer checkpoint")->required();
  dec->add_option("--lid", lid, "LID classifier checkpoint");
  dec->add_option("--split", split, "Corpus split (default: test)");
  dec->add_option("--expected-lang", expected_lang, "Gate on this language");
  dec->add_option("--gate-threshold", threshold, "Overrides decode.gate_threshold");
  dec->add_option("--output", output, "Output TSV")->required();

  auto *eer = app.add_subcommand("lid-eer", "LID trials and EER per test duration");
  AddCommon(eer, &common);
  eer->add_option("--model", model, "Transducer checkpoint providing the encoder")->required();
  eer->add_option("--lid", lid, "LID classifier checkpoint")->required();
  eer->add_option("--name", name, "Artifact name (default: lid-eer)");

  std::vector<const char *> argv = {"rntm"};
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "rntm: error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    auto named = [&](const char *fallback) { return name.empty() ? std::string(fallback) : name; };
    CLI::App *cmd = app.get_subcommands().front();
    const RunContext ctx = MakeContext(common, cmd->get_name());
    RunReport report;
    if (cmd == gen) {
      report = RunGenData(ctx, out);
    } else if (cmd == asr) {
      report = RunTrainAsr(ctx, named("asr"), out);
    } else if (cmd == ser) {
      RNTM_REQUIRE(!(no_freeze && !freeze.empty()), "--freeze and --no-freeze exclude each other");
      SerOptions o;
      o.base_checkpoint = model;
      o.name = named("ser");
      o.tags = !no_tags;
      if (no_freeze) o.freeze = std::vector<std::string>{};
      if (!freeze.empty()) o.freeze = freeze;
      o.epochs = epochs;
      report = RunTrainSer(ctx, o, out);
    } else if (cmd == tlid) {
      LidOptions o;
      o.model_checkpoint = model;
      o.name = named("lid");
      if (finetune) o.finetune_encoder = true;
      report = RunTrainLid(ctx, o, out);
    } else if (cmd == eval) {
      report = RunEval(ctx, model, split, named("eval"), out);
    } else if (cmd == dec) {
      DecodeOptions o;
      o.model_checkpoint = model;
      o.lid_checkpoint = lid;
      o.split = split;
      o.expected_language = expected_lang;
      o.gate_threshold = threshold;
      o.output = output;
      report = RunDecode(ctx, o, out);
    } else {
      report = RunLidEer(ctx, model, lid, named("lid-eer"), out);
    }
    out << ctx.ReproLine() << '\n';
    return kExitOk;
  } catch (const NumericalError &e) {
    err << "rntm: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception &e) {
    err << "rntm: error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace rntm
