// nnet/param-store.cc

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

#include "nnet/param-store.h"

#include <fnmatch.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "base/rntm-common.h"

namespace rntm {

bool GlobMatch(const std::string &pattern, const std::string &name) {
  return fnmatch(pattern.c_str(), name.c_str(), 0) == 0;
}

namespace {
size_t ShapeSize(const std::vector<int> &shape) {
  size_t n = 1;
  for (int d : shape) n *= static_cast<size_t>(d);
  return n;
}
}  // namespace

Param &ParamStore::Add(const std::string &name, std::vector<int> shape) {
  RNTM_REQUIRE(!name.empty(), "ParamStore: empty parameter name");
  RNTM_REQUIRE(!Contains(name), "ParamStore: duplicate parameter " << name);
  RNTM_REQUIRE(!shape.empty(), "ParamStore: " << name << " has empty shape");
  for (int d : shape) RNTM_REQUIRE(d >= 1, "ParamStore: " << name << " has dim " << d);
  Param p;
  size_t n = ShapeSize(shape);
  p.shape = std::move(shape);
  p.value.assign(n, 0.0);
  p.grad.assign(n, 0.0);
  return entries_.emplace(name, std::move(p)).first->second;
}

Param &ParamStore::Get(const std::string &name) {
  auto it = entries_.find(name);
  RNTM_REQUIRE(it != entries_.end(), "ParamStore: no parameter named " << name);
  return it->second;
}

const Param &ParamStore::Get(const std::string &name) const {
  auto it = entries_.find(name);
  RNTM_REQUIRE(it != entries_.end(), "ParamStore: no parameter named " << name);
  return it->second;
}

void ParamStore::Reshape(const std::string &name, std::vector<int> shape,
                         std::vector<double> values) {
  Param &p = Get(name);
  RNTM_REQUIRE(ShapeSize(shape) == values.size(),
               "ParamStore: reshape of " << name << " with wrong value count");
  p.shape = std::move(shape);
  p.value = std::move(values);
  p.grad.assign(p.value.size(), 0.0);
}

ConstMatrixMap ParamStore::Mat(const std::string &name) const {
  const Param &p = Get(name);
  return ConstMatrixMap(p.value.data(), p.Rows(), p.Cols());
}

MatrixMap ParamStore::GradMat(const std::string &name) {
  Param &p = Get(name);
  return MatrixMap(p.grad.data(), p.Rows(), p.Cols());
}

ConstVectorMap ParamStore::Vec(const std::string &name) const {
  const Param &p = Get(name);
  return ConstVectorMap(p.value.data(), static_cast<Eigen::Index>(p.Size()));
}

VectorMap ParamStore::GradVec(const std::string &name) {
  Param &p = Get(name);
  return VectorMap(p.grad.data(), static_cast<Eigen::Index>(p.Size()));
}

std::vector<std::string> ParamStore::Names() const {
  std::vector<std::string> names;
  names.reserve(entries_.size());
  for (const auto &[name, p] : entries_) names.push_back(name);
  return names;
}

size_t ParamStore::NumParams() const {
  size_t n = 0;
  for (const auto &[name, p] : entries_) n += p.Size();
  return n;
}

void ParamStore::ZeroGrad() {
  for (auto &[name, p] : entries_) std::fill(p.grad.begin(), p.grad.end(), 0.0);
}

void ParamStore::AccumulateGrad(const ParamStore &other, double scale) {
  RNTM_REQUIRE(SameLayout(other), "AccumulateGrad: layout mismatch");
  auto it = other.entries_.begin();
  for (auto &[name, p] : entries_) {
    const Param &q = (it++)->second;
    for (size_t i = 0; i < p.grad.size(); ++i) p.grad[i] += scale * q.grad[i];
  }
}

void ParamStore::SgdStep(double lr) {
  for (auto &[name, p] : entries_) {
    if (p.frozen) continue;
    for (size_t i = 0; i < p.value.size(); ++i) p.value[i] -= lr * p.grad[i];
  }
}

double ParamStore::GradNormSquared() const {
  double s = 0.0;
  for (const auto &[name, p] : entries_) {
    if (p.frozen) continue;
    for (double g : p.grad) s += g * g;
  }
  return s;
}

void ParamStore::ScaleGrad(double factor) {
  for (auto &[name, p] : entries_)
    for (double &g : p.grad) g *= factor;
}

int ParamStore::SetFrozen(const std::string &pattern, bool frozen) {
  int count = 0;
  for (auto &[name, p] : entries_) {
    if (GlobMatch(pattern, name)) {
      p.frozen = frozen;
      ++count;
    }
  }
  return count;
}

void ParamStore::ApplyFreezePatterns(const std::vector<std::string> &patterns) {
  for (auto &[name, p] : entries_) {
    p.frozen = std::any_of(patterns.begin(), patterns.end(),
                           [&](const std::string &pat) { return GlobMatch(pat, name); });
  }
}

bool ParamStore::AllFrozen(const std::string &pattern) const {
  bool any = false;
  for (const auto &[name, p] : entries_) {
    if (!GlobMatch(pattern, name)) continue;
    any = true;
    if (!p.frozen) return false;
  }
  return any;
}

uint64_t ParamStore::Checksum(const std::string &pattern) const {
  uint64_t h = Fnv1a64("");
  for (const auto &[name, p] : entries_) {
    if (!GlobMatch(pattern, name)) continue;
    h = Fnv1a64(name, h);
    h = Fnv1a64(std::string_view(reinterpret_cast<const char *>(p.value.data()),
                                 p.value.size() * sizeof(double)),
                h);
  }
  return h;
}

ParamStore ParamStore::GradientBuffer() const {
  ParamStore copy = *this;
  copy.ZeroGrad();
  return copy;
}

void ParamStore::CopyValuesFrom(const ParamStore &other, const std::string &pattern) {
  for (auto &[name, p] : entries_) {
    if (!GlobMatch(pattern, name)) continue;
    const Param &q = other.Get(name);
    RNTM_REQUIRE(q.shape == p.shape, "CopyValuesFrom: shape mismatch for " << name);
    p.value = q.value;
    p.frozen = q.frozen;
  }
}

bool ParamStore::SameLayout(const ParamStore &other) const {
  if (entries_.size() != other.entries_.size()) return false;
  auto it = other.entries_.begin();
  for (const auto &[name, p] : entries_) {
    if (it->first != name || it->second.shape != p.shape) return false;
    ++it;
  }
  return true;
}

}  // namespace rntm
