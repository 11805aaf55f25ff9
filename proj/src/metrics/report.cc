// metrics/report.cc

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

#include "metrics/report.h"

#include <charconv>

#include "base/rntm-common.h"

namespace rntm {

std::string CsvEscape(const std::string &field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> CsvSplit(const std::string &line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  RNTM_REQUIRE(!quoted, "CSV: unterminated quote in '" << line << "'");
  return fields;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void WriteEvalReport(std::ostream &out, const std::vector<EvalRow> &rows) {
  out << "utt_id,ref,hyp,cer,wer,true_emotion,pred_emotion\n";
  for (const auto &r : rows) {
    out << CsvEscape(r.utt_id) << ',' << CsvEscape(r.ref) << ',' << CsvEscape(r.hyp) << ','
        << FormatDouble(r.cer) << ',' << FormatDouble(r.wer) << ',' << CsvEscape(r.true_emotion)
        << ',' << CsvEscape(r.pred_emotion) << '\n';
  }
}

void WriteEerSummary(std::ostream &out, const std::vector<EerRow> &rows) {
  out << "duration_frames,eer\n";
  for (const auto &r : rows) out << r.duration_frames << ',' << FormatDouble(r.eer) << '\n';
}

}  // namespace rntm
