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
// -----------------------------------------------------------------------------
//
//  Position-dependent prediction combination.
//
//  The combined prediction of pixel (x, y) is
//
//    p = (c1v * r[x,-1] - c2v * r[-1,-1]) * 2^(-y/dv)
//      + (c1h * r[-1,y] - c2h * r[-1,-1]) * 2^(-x/dh)
//      + b' * q[x,y]
//
//  where q is the HEVC prediction computed from the filtered references
//  s = a * r + (1 - a) * (h_k * r), h_k is the order-k binomial filter, and b'
//  makes the weights sum to one. The full form additionally blends in the
//  HEVC prediction from the unfiltered references with weight
//  t = (N - min(x, y)) / N.
//
//  All weights are double precision; integer output is produced only by
//  FinalizeSample().
//

#ifndef PDPC_SRC_PDPC_PREDICTOR_H_
#define PDPC_SRC_PDPC_PREDICTOR_H_

#include <vector>

#include "src/block.h"
#include "src/intra.h"
#include "src/matrix.h"

namespace pdpc {

struct PdpcParams {
  double c1v = 0.0;
  double c2v = 0.0;
  double c1h = 0.0;
  double c2h = 0.0;
  int dv = 1;
  int dh = 1;
  double a = 1.0;
  int k = 2;

  // c's = 0 and a = 1: plain HEVC prediction (with real arithmetic).
  static PdpcParams Identity(BlockSize size);
  bool IsIdentity() const;
  // Throws kInvalidArgument when a field leaves its domain.
  void Validate() const;
  // Also requires dv = dh = SizeRule(size).
  void Validate(BlockSize size) const;

  bool operator==(const PdpcParams&) const = default;
};

// 1 for N <= 16, 2 for N = 32.
int SizeRule(BlockSize size);

// The k+1 taps of (1 + z)^k / 2^k. k must be one of 2, 4, 6, 8.
std::vector<double> BinomialKernel(int k);

// s = a * r + (1 - a) * (h_k * r) along the left-corner-top contour, edges
// handled by endpoint replication.
ReferenceArray MakeFilteredRefs(const ReferenceArray& refs, double a, int k);

// (4N+1) x (4N+1) matrix F with s = F r in canonical ordering.
Matrix FilterMatrix(BlockSize size, double a, int k);

// 2^(-coord / d).
double DecayWeight(int coord, int d);

// (N - min(x, y)) / N.
double TWeight(int x, int y, BlockSize size);

struct PdpcWeights {
  double wv = 0.0;   // c1v * 2^(-y/dv)
  double wvc = 0.0;  // c2v * 2^(-y/dv)
  double wh = 0.0;   // c1h * 2^(-x/dh)
  double whc = 0.0;  // c2h * 2^(-x/dh)
  double t = 0.0;
  double b = 0.0;        // full-form weight of the filtered prediction
  double b_prime = 0.0;  // shortcut-form weight of the filtered prediction
};

PdpcWeights ComputeWeights(int x, int y, BlockSize size, const PdpcParams& params);

// HEVC settings used for the inner predictions: the [1 2 1] table is off
// because s already carries the smoothing; boundary filters follow `policy`.
SmoothingPolicy InnerPolicy(SmoothingPolicy policy);

PredictionBlock PredictPdpcShortcut(const ReferenceArray& refs, PredictionMode mode,
                                    const PdpcParams& params, SmoothingPolicy policy);

// One pixel of PredictPdpcShortcut() computed on its own.
double PredictPdpcShortcutSample(const ReferenceArray& refs, PredictionMode mode,
                                 const PdpcParams& params, SmoothingPolicy policy,
                                 int x, int y);

PredictionBlock PredictPdpcFull(const ReferenceArray& refs, PredictionMode mode,
                                const PdpcParams& params, SmoothingPolicy policy);

// Column j is PredictPdpcShortcut() applied to the j-th canonical unit
// reference vector.
PredictorMatrix RealizeMatrix(BlockSize size, PredictionMode mode,
                              const PdpcParams& params, SmoothingPolicy policy);

// The real-arithmetic HEVC predictor as a matrix (kind kHevc).
PredictorMatrix RealizeHevcMatrix(BlockSize size, PredictionMode mode,
                                  SmoothingPolicy policy);

}  // namespace pdpc

#endif  // PDPC_SRC_PDPC_PREDICTOR_H_
