// cli/pipelines.h

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

#ifndef RNTM_CLI_PIPELINES_H_
#define RNTM_CLI_PIPELINES_H_

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cli/experiment-config.h"
#include "metrics/edit-distance.h"
#include "metrics/report.h"
#include "synth/dataset.h"
#include "transducer/rnnt-model.h"

namespace rntm {

/// Resolved inputs of one command invocation.
struct RunContext {
  ExperimentConfig config;  // seed already overridden from the command line
  std::string command;
  std::string data_dir;
  std::string out_dir;
  int num_threads = 1;

  /// `config_hash=<hex> seed=<n> command=<name>`.
  std::string ReproLine() const;
};

/// Ordered key,value summary of a run. Written as CSV with the
/// reproducibility line appended as a final `#` comment.
class RunReport {
 public:
  void Add(const std::string &key, const std::string &value);
  void Add(const std::string &key, double value);
  void Add(const std::string &key, int value) { Add(key, std::to_string(value)); }
  const std::vector<std::pair<std::string, std::string>> &rows() const { return rows_; }
  /// Empty string when absent.
  std::string Get(const std::string &key) const;
  void Write(const std::string &path, const RunContext &ctx) const;

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

/// Reads a report back (the `#` line is skipped).
RunReport ReadRunReport(const std::string &path);

// ---- shared helpers

/// "<blank>" followed by the corpus symbols; corpus id i maps to i + 1.
Vocab AsrBaseVocab(const CorpusManifest &manifest);
/// Throws ContractError unless `model`'s character symbols are exactly
/// AsrBaseVocab(manifest) (emotion tags may follow).
void CheckVocabCompatible(const RnntModel &model, const CorpusManifest &manifest);
/// Transducer target for an utterance: its transcript in vocab ids.
std::vector<int> TargetIds(const FeatureSequence &u, const CorpusManifest &manifest,
                           const Vocab &vocab);
/// Non-tag tokens concatenated into text, e.g. "AB CD".
std::string HypothesisText(const std::vector<int> &ids, const Vocab &vocab);

struct AsrEvaluation {
  std::vector<EvalRow> rows;
  ErrorCounts chars, words;  // summed over utterances
  double emotion_accuracy = 0.0;
};
/// Greedy-decodes every utterance and scores transcripts (tags stripped) and
/// emotions (last tag, NEUTRAL fallback).
AsrEvaluation EvaluateAsr(const RnntModel &model, const std::vector<FeatureSequence> &utts,
                          const CorpusManifest &manifest, int max_symbols_per_frame,
                          int num_threads);

// ---- commands; each writes its artifacts under ctx.out_dir (gen-data under
// ctx.data_dir) and returns the report it wrote.

RunReport RunGenData(const RunContext &ctx, std::ostream &log);
RunReport RunTrainAsr(const RunContext &ctx, const std::string &name, std::ostream &log);

struct SerOptions {
  std::string base_checkpoint;
  std::string name = "ser";
  bool tags = true;
  std::optional<std::vector<std::string>> freeze;  // overrides config.ser.freeze
  std::optional<int> epochs;                       // overrides config.ser.opt.epochs
};
RunReport RunTrainSer(const RunContext &ctx, const SerOptions &opts, std::ostream &log);

struct LidOptions {
  std::string model_checkpoint;
  std::string name = "lid";
  std::optional<bool> finetune_encoder;  // overrides config.lid.finetune_encoder
};
RunReport RunTrainLid(const RunContext &ctx, const LidOptions &opts, std::ostream &log);

RunReport RunEval(const RunContext &ctx, const std::string &model_checkpoint,
                  const std::string &split, const std::string &name, std::ostream &log);

struct DecodeOptions {
  std::string model_checkpoint;
  std::string lid_checkpoint;     // optional
  std::string split = "test";
  std::string expected_language;  // enables gating; needs a LID checkpoint
  std::optional<double> gate_threshold;
  std::string output;             // TSV path
};
RunReport RunDecode(const RunContext &ctx, const DecodeOptions &opts, std::ostream &log);

RunReport RunLidEer(const RunContext &ctx, const std::string &model_checkpoint,
                    const std::string &lid_checkpoint, const std::string &name,
                    std::ostream &log);

}  // namespace rntm

#endif  // RNTM_CLI_PIPELINES_H_
