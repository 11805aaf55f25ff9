// metrics/report.h

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

#ifndef RNTM_METRICS_REPORT_H_
#define RNTM_METRICS_REPORT_H_

#include <ostream>
#include <string>
#include <vector>

namespace rntm {

/// Quotes a CSV field when it holds a comma, quote or line break.
std::string CsvEscape(const std::string &field);
/// Splits one CSV line, honouring quoted fields.
std::vector<std::string> CsvSplit(const std::string &line);
/// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double v);

struct EvalRow {
  std::string utt_id, ref, hyp;
  double cer = 0.0, wer = 0.0;  // fractions
  std::string true_emotion, pred_emotion;
};

/// Header utt_id,ref,hyp,cer,wer,true_emotion,pred_emotion, one row each.
void WriteEvalReport(std::ostream &out, const std::vector<EvalRow> &rows);

struct EerRow {
  int duration_frames = 0;
  double eer = 0.0;  // fraction
};

/// Header duration_frames,eer, one row each.
void WriteEerSummary(std::ostream &out, const std::vector<EerRow> &rows);

}  // namespace rntm

#endif  // RNTM_METRICS_REPORT_H_
