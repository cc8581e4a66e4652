// Copyright 2026 The PDPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "src/pdpc_predictor.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "src/status.h"

namespace pdpc {

PdpcParams PdpcParams::Identity(BlockSize size) {
  PdpcParams p;
  p.dv = p.dh = SizeRule(size);
  return p;
}

bool PdpcParams::IsIdentity() const {
  return c1v == 0.0 && c2v == 0.0 && c1h == 0.0 && c2h == 0.0 && a == 1.0;
}

void PdpcParams::Validate() const {
  for (double c : {c1v, c2v, c1h, c2h}) {
    Check(std::isfinite(c) && std::abs(c) <= 1.0, ErrorCode::kInvalidArgument,
          "PDPC weight " + std::to_string(c) + " outside [-1, 1]");
  }
  Check(dv == 1 || dv == 2, ErrorCode::kInvalidArgument, "dv must be 1 or 2");
  Check(dh == 1 || dh == 2, ErrorCode::kInvalidArgument, "dh must be 1 or 2");
  Check(a >= 0.0 && a <= 1.0, ErrorCode::kInvalidArgument,
        "blend weight a outside [0, 1]");
  Check(k == 2 || k == 4 || k == 6 || k == 8, ErrorCode::kInvalidArgument,
        "binomial order k must be 2, 4, 6 or 8");
}

int SizeRule(BlockSize size) { return size.n() <= 16 ? 1 : 2; }

void PdpcParams::Validate(BlockSize size) const {
  Validate();
  const int d = SizeRule(size);
  Check(dv == d && dh == d, ErrorCode::kInvalidArgument,
        "decay parameters must be " + std::to_string(d) + " for N=" + std::to_string(size.n()));
}

std::vector<double> BinomialKernel(int k) {
  Check(k == 2 || k == 4 || k == 6 || k == 8, ErrorCode::kInvalidArgument,
        "binomial order " + std::to_string(k) + " not in {2, 4, 6, 8}");
  std::vector<double> row = {1.0};
  for (int i = 0; i < k; ++i) {
    std::vector<double> next(row.size() + 1, 0.0);
    for (size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  const double scale = std::ldexp(1.0, -k);
  for (double& v : row) v *= scale;
  return row;
}

ReferenceArray MakeFilteredRefs(const ReferenceArray& refs, double a, int k) {
  const std::vector<double> taps = BinomialKernel(k);
  const std::vector<double> in = refs.ToContour();
  if (a == 1.0) return refs;
  const int len = static_cast<int>(in.size());
  const int half = k / 2;
  std::vector<double> out(len);
  for (int i = 0; i < len; ++i) {
    double acc = 0.0;
    for (int t = -half; t <= half; ++t) {
      acc += taps[t + half] * in[std::clamp(i + t, 0, len - 1)];
    }
    out[i] = a * in[i] + (1.0 - a) * acc;
  }
  return ReferenceArray::FromContour(out, refs.size(), refs.bit_depth());
}

Matrix FilterMatrix(BlockSize size, double a, int k) {
  const int m = size.num_refs();
  Matrix f(m, m);
  for (int j = 0; j < m; ++j) {
    const ReferenceArray s = MakeFilteredRefs(ReferenceArray::UnitVector(size, j), a, k);
    const std::vector<double> col = s.ToVector();
    for (int i = 0; i < m; ++i) f(i, j) = col[i];
  }
  return f;
}

double DecayWeight(int coord, int d) {
  return std::exp2(-static_cast<double>(coord) / d);
}

double TWeight(int x, int y, BlockSize size) {
  return static_cast<double>(size.n() - std::min(x, y)) / size.n();
}

PdpcWeights ComputeWeights(int x, int y, BlockSize size, const PdpcParams& params) {
  const double decay_v = DecayWeight(y, params.dv);
  const double decay_h = DecayWeight(x, params.dh);
  PdpcWeights w;
  w.wv = params.c1v * decay_v;
  w.wvc = params.c2v * decay_v;
  w.wh = params.c1h * decay_h;
  w.whc = params.c2h * decay_h;
  w.t = TWeight(x, y, size);
  w.b_prime = 1.0 - (w.wv - w.wvc) - (w.wh - w.whc);
  w.b = w.b_prime - w.t;
  return w;
}

SmoothingPolicy InnerPolicy(SmoothingPolicy policy) {
  return {.enabled = false, .edge_filters = policy.edge_filters};
}

namespace {

double EdgeTerms(const ReferenceArray& refs, const PdpcWeights& w, int x, int y) {
  return (w.wv * refs.top(x) - w.wvc * refs.corner()) +
         (w.wh * refs.left(y) - w.whc * refs.corner());
}

}  // namespace

PredictionBlock PredictPdpcShortcut(const ReferenceArray& refs, PredictionMode mode,
                                    const PdpcParams& params, SmoothingPolicy policy) {
  params.Validate(refs.size());
  const ReferenceArray filtered = MakeFilteredRefs(refs, params.a, params.k);
  const HevcPredictor inner(filtered, mode, InnerPolicy(policy), Arithmetic::kReal);
  const BlockSize size = refs.size();
  PredictionBlock pred(size);
  for (int y = 0; y < size.n(); ++y) {
    for (int x = 0; x < size.n(); ++x) {
      const PdpcWeights w = ComputeWeights(x, y, size, params);
      pred.at(x, y) = EdgeTerms(refs, w, x, y) + w.b_prime * inner.Sample(x, y);
    }
  }
  return pred;
}

double PredictPdpcShortcutSample(const ReferenceArray& refs, PredictionMode mode,
                                 const PdpcParams& params, SmoothingPolicy policy,
                                 int x, int y) {
  params.Validate(refs.size());
  const ReferenceArray filtered = MakeFilteredRefs(refs, params.a, params.k);
  const HevcPredictor inner(filtered, mode, InnerPolicy(policy), Arithmetic::kReal);
  const PdpcWeights w = ComputeWeights(x, y, refs.size(), params);
  return EdgeTerms(refs, w, x, y) + w.b_prime * inner.Sample(x, y);
}

PredictionBlock PredictPdpcFull(const ReferenceArray& refs, PredictionMode mode,
                                const PdpcParams& params, SmoothingPolicy policy) {
  params.Validate(refs.size());
  const ReferenceArray filtered = MakeFilteredRefs(refs, params.a, params.k);
  const HevcPredictor from_filtered(filtered, mode, InnerPolicy(policy),
                                    Arithmetic::kReal);
  const HevcPredictor from_raw(refs, mode, InnerPolicy(policy), Arithmetic::kReal);
  const BlockSize size = refs.size();
  PredictionBlock pred(size);
  for (int y = 0; y < size.n(); ++y) {
    for (int x = 0; x < size.n(); ++x) {
      const PdpcWeights w = ComputeWeights(x, y, size, params);
      pred.at(x, y) = EdgeTerms(refs, w, x, y) + w.t * from_raw.Sample(x, y) +
                      w.b * from_filtered.Sample(x, y);
    }
  }
  return pred;
}

PredictorMatrix RealizeMatrix(BlockSize size, PredictionMode mode,
                              const PdpcParams& params, SmoothingPolicy policy) {
  params.Validate(size);
  PredictorMatrix h(size, mode, MatrixKind::kPdpc);
  for (int j = 0; j < size.num_refs(); ++j) {
    const PredictionBlock col =
        PredictPdpcShortcut(ReferenceArray::UnitVector(size, j), mode, params, policy);
    for (int i = 0; i < size.num_pixels(); ++i) h.entries(i, j) = col.values()[i];
  }
  return h;
}

PredictorMatrix RealizeHevcMatrix(BlockSize size, PredictionMode mode,
                                  SmoothingPolicy policy) {
  PredictorMatrix h(size, mode, MatrixKind::kHevc);
  for (int j = 0; j < size.num_refs(); ++j) {
    const PredictionBlock col = PredictHevc(ReferenceArray::UnitVector(size, j), mode,
                                            policy, Arithmetic::kReal);
    for (int i = 0; i < size.num_pixels(); ++i) h.entries(i, j) = col.values()[i];
  }
  return h;
}

}  // namespace pdpc
