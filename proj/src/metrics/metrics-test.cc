// metrics/metrics-test.cc

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "base/rntm-common.h"
#include "doctest.h"
#include "metrics/detection.h"
#include "metrics/edit-distance.h"
#include "metrics/report.h"
#include "nnet/rng.h"

namespace rntm {
namespace {

// Plain recursion over the three edit moves, no table.
int SlowLevenshtein(const std::string &a, const std::string &b) {
  if (a.empty()) return static_cast<int>(b.size());
  if (b.empty()) return static_cast<int>(a.size());
  const std::string ra = a.substr(1), rb = b.substr(1);
  return std::min({SlowLevenshtein(ra, rb) + (a[0] == b[0] ? 0 : 1), SlowLevenshtein(ra, b) + 1,
                   SlowLevenshtein(a, rb) + 1});
}

std::string RandomString(Rng *rng, int max_len) {
  std::string s(rng->UniformInt(0, max_len), ' ');
  for (char &c : s) c = static_cast<char>('a' + rng->UniformInt(0, 2));
  return s;
}

// EER without building a hull: the hull boundary is made of segments between
// ROC points, and every such segment lies inside the hull, so the lowest
// diagonal crossing over all point pairs is the hull's crossing.
double EerByAllPairs(const std::vector<Trial> &trials) {
  std::vector<std::pair<double, double>> pts;  // (far, frr)
  std::vector<double> thresholds;
  for (const auto &t : trials) thresholds.push_back(t.score);
  thresholds.push_back(std::numeric_limits<double>::infinity());
  double nt = 0, nn = 0;
  for (const auto &t : trials) (t.is_target ? nt : nn) += 1;
  for (double th : thresholds) {
    double fa = 0, fr = 0;
    for (const auto &t : trials) {
      if (t.is_target && t.score < th) fr += 1;
      if (!t.is_target && t.score >= th) fa += 1;
    }
    pts.emplace_back(fa / nn, fr / nt);
  }
  double best = 1.0;
  for (const auto &p : pts) {
    for (const auto &q : pts) {
      const double dp = p.first - p.second, dq = q.first - q.second;
      if (dp > 0 || dq < 0) continue;
      const double x = dp == dq ? p.first : p.first + (-dp / (dq - dp)) * (q.first - p.first);
      best = std::min(best, x);
    }
  }
  return best;
}

std::vector<Trial> RandomTrials(Rng *rng, bool coarse) {
  std::vector<Trial> t;
  const int nt = static_cast<int>(rng->UniformInt(1, 8)), nn = static_cast<int>(rng->UniformInt(1, 8));
  const double shift = rng->Uniform(-1.0, 2.0);
  for (int i = 0; i < nt; ++i) {
    double s = rng->Normal() + shift;
    if (coarse) s = std::round(s * 2) / 2;
    t.push_back({s, true});
  }
  for (int i = 0; i < nn; ++i) {
    double s = rng->Normal();
    if (coarse) s = std::round(s * 2) / 2;
    t.push_back({s, false});
  }
  rng->Shuffle(&t);
  return t;
}

}  // namespace

TEST_CASE("edit distance: examples") {
  CHECK(EditDistance("abc", "abc") == 0);
  CHECK(EditDistance("", "abc") == 3);
  CHECK(EditDistance("abc", "") == 3);
  CHECK(EditDistance("kitten", "sitting") == 3);
  CHECK(EditDistance("kitten", "sitting") == SlowLevenshtein("kitten", "sitting"));
}

TEST_CASE("edit distance: matches exhaustive recursion") {
  Rng rng(1);
  for (int rep = 0; rep < 600; ++rep) {
    const std::string a = RandomString(&rng, 6), b = RandomString(&rng, 6);
    CHECK(EditDistance(a, b) == SlowLevenshtein(a, b));
  }
}

TEST_CASE("edit distance: metric axioms") {
  Rng rng(2);
  for (int rep = 0; rep < 400; ++rep) {
    const std::string a = RandomString(&rng, 6), b = RandomString(&rng, 6),
                      c = RandomString(&rng, 6);
    CHECK(EditDistance(a, a) == 0);
    CHECK((EditDistance(a, b) == 0) == (a == b));
    CHECK(EditDistance(a, b) == EditDistance(b, a));
    CHECK(EditDistance(a, c) <= EditDistance(a, b) + EditDistance(b, c));
  }
}

TEST_CASE("alignment breakdown: counts add up and follow the tie order") {
  Rng rng(3);
  for (int rep = 0; rep < 400; ++rep) {
    const std::string a = RandomString(&rng, 7), b = RandomString(&rng, 7);
    const ErrorCounts c = Align(std::span<const char>(a), std::span<const char>(b));
    CHECK(c.Errors() == SlowLevenshtein(a, b));
    CHECK(c.reference_length == static_cast<int>(a.size()));
    CHECK(c.deletions - c.insertions == static_cast<int>(a.size()) - static_cast<int>(b.size()));
  }
  auto counts = [](const std::string &a, const std::string &b) {
    return Align(std::span<const char>(a), std::span<const char>(b));
  };
  // Two substitutions are preferred over a deletion plus an insertion.
  CHECK(counts("ab", "ba") == ErrorCounts{2, 0, 0, 2});
  CHECK(counts("abc", "ac") == ErrorCounts{0, 0, 1, 3});
  CHECK(counts("ac", "abc") == ErrorCounts{0, 1, 0, 2});
  CHECK(counts("", "xy") == ErrorCounts{0, 2, 0, 0});
}

TEST_CASE("wer and cer") {
  CHECK(Wer("a b c", "a b c") == 0.0);
  CHECK(Wer("a b c", "a x c") == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(Wer("a", "a b c") == 2.0);
  CHECK(Wer("  a   b ", "a b") == 0.0);
  CHECK(Cer("ab cd", "ab cd") == 0.0);
  CHECK(Cer("ab cd", "abcd") == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(Cer("a", "") == 1.0);
  CHECK_THROWS_AS(Wer("", "a"), ContractError);
  CHECK_THROWS_AS(Wer("   ", "a"), ContractError);
  CHECK_THROWS_AS(Cer("", "a"), ContractError);
  ErrorCounts total = WordErrors("a b", "a");
  total += WordErrors("c d e", "c x e");
  CHECK(total.Rate() == doctest::Approx(2.0 / 5).epsilon(1e-15));
}

TEST_CASE("eer: hand cases") {
  std::vector<Trial> sep = {{0.9, true}, {0.8, true}, {0.3, false}, {0.1, false}};
  CHECK(EqualErrorRate(sep) == 0.0);
  std::vector<Trial> same = {{0.5, true}, {0.5, false}, {0.5, true}, {0.5, false}};
  CHECK(EqualErrorRate(same) == doctest::Approx(0.5).epsilon(1e-15));
  std::vector<Trial> mixed = {{0.9, true}, {0.4, true}, {0.6, false}, {0.1, false}};
  CHECK(EqualErrorRate(mixed) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("eer: hull and point set") {
  std::vector<Trial> mixed = {{0.9, true}, {0.4, true}, {0.6, false}, {0.1, false}};
  const auto pts = RocPoints(mixed);
  REQUIRE(pts.size() == 5);
  CHECK(pts.front().far == 0.0);
  CHECK(pts.front().frr == 1.0);
  CHECK(pts.back().far == 1.0);
  CHECK(pts.back().frr == 0.0);
  const auto hull = RocConvexHull(mixed);
  REQUIRE(hull.size() == 4);
  CHECK(hull[1].far == 0.0);
  CHECK(hull[1].frr == 0.5);
  CHECK(hull[2].far == 0.5);
  CHECK(hull[2].frr == 0.0);
}

TEST_CASE("eer: agrees with the all-pairs oracle") {
  Rng rng(4);
  for (int rep = 0; rep < 500; ++rep) {
    const auto t = RandomTrials(&rng, rep % 2 == 0);
    const double e = EqualErrorRate(t);
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
    CHECK(std::abs(e - EerByAllPairs(t)) < 1e-12);
  }
}

TEST_CASE("eer: invariant under increasing score maps") {
  Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    auto t = RandomTrials(&rng, rep % 3 == 0);
    const double e = EqualErrorRate(t);
    auto u = t;
    for (auto &x : u) x.score = std::exp(3.0 * x.score) + 7.0;
    CHECK(EqualErrorRate(u) == doctest::Approx(e).epsilon(1e-12));
    for (auto &x : u) x.score = std::atan(x.score);
    CHECK(EqualErrorRate(u) == doctest::Approx(e).epsilon(1e-12));
  }
}

TEST_CASE("eer: contract errors") {
  std::vector<Trial> only_tgt = {{1.0, true}, {0.0, true}};
  std::vector<Trial> only_non = {{1.0, false}};
  std::vector<Trial> nan = {{std::nan(""), true}, {0.0, false}};
  CHECK_THROWS_AS(EqualErrorRate(only_tgt), ContractError);
  CHECK_THROWS_AS(EqualErrorRate(only_non), ContractError);
  CHECK_THROWS_AS(EqualErrorRate(nan), ContractError);
  CHECK_THROWS_AS(EqualErrorRate({}), ContractError);
}

TEST_CASE("accuracy") {
  const std::vector<std::string> a = {"x", "y", "z", "w"};
  const std::vector<std::string> b = {"p", "q", "r", "s"};
  const std::vector<std::string> c = {"x", "y", "z", "s"};
  CHECK(Accuracy(a, a) == 1.0);
  CHECK(Accuracy(a, b) == 0.0);
  CHECK(Accuracy(a, c) == 0.75);
  CHECK_THROWS_AS(Accuracy(a, std::vector<std::string>{"x"}), ContractError);
  CHECK_THROWS_AS(Accuracy(std::vector<std::string>{}, std::vector<std::string>{}),
                  ContractError);
}

TEST_CASE("csv reports") {
  std::ostringstream eval;
  WriteEvalReport(eval, {{"u1", "AB CD", "AB, C\"D", 0.2, 0.5, "HAPPY", "SAD"}});
  CHECK(eval.str() ==
        "utt_id,ref,hyp,cer,wer,true_emotion,pred_emotion\n"
        "u1,AB CD,\"AB, C\"\"D\",0.2,0.5,HAPPY,SAD\n");
  const auto fields = CsvSplit("u1,AB CD,\"AB, C\"\"D\",0.2,0.5,HAPPY,SAD");
  REQUIRE(fields.size() == 7);
  CHECK(fields[2] == "AB, C\"D");
  CHECK_THROWS_AS(CsvSplit("a,\"b"), ContractError);

  std::ostringstream eer;
  WriteEerSummary(eer, {{10, 0.125}, {300, 0.0}});
  CHECK(eer.str() == "duration_frames,eer\n10,0.125\n300,0\n");
  CHECK(std::stod(FormatDouble(0.1 + 0.2)) == 0.1 + 0.2);
}

}  // namespace rntm
