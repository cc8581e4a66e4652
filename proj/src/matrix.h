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

#ifndef PDPC_SRC_MATRIX_H_
#define PDPC_SRC_MATRIX_H_

#include <cstdint>

#include <Eigen/Dense>

#include "src/block.h"

namespace pdpc {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class MatrixKind : uint8_t { kOracle = 0, kPdpc = 1, kHevc = 2 };

// Dense N^2 x (4N+1) linear map from the canonical reference vector to the
// raster-ordered block prediction.
struct PredictorMatrix {
  BlockSize size;
  PredictionMode mode;
  MatrixKind kind = MatrixKind::kOracle;
  Matrix entries;

  PredictorMatrix(BlockSize s, PredictionMode m, MatrixKind k)
      : size(s), mode(m), kind(k), entries(Matrix::Zero(s.num_pixels(), s.num_refs())) {}

  PredictionBlock Apply(const ReferenceArray& refs) const {
    const std::vector<double> r = refs.ToVector();
    const Vector p = entries * Eigen::Map<const Vector>(r.data(), r.size());
    PredictionBlock out(size);
    for (int i = 0; i < size.num_pixels(); ++i) out.values()[i] = p[i];
    return out;
  }
};

}  // namespace pdpc

#endif  // PDPC_SRC_MATRIX_H_
