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

#include "src/viz.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "src/status.h"

namespace pdpc {

uint8_t GrayLevel(double weight, double max_abs) {
  if (max_abs == 0.0) return 128;
  // Rounding the offset keeps +w and -w symmetric about 128.
  const double v = 128.0 + std::round(127.0 * weight / max_abs);
  return static_cast<uint8_t>(std::clamp(v, 0.0, 255.0));
}

MatrixImage RenderMatrixGrid(std::span<const PredictorMatrix> matrices,
                             Normalization normalization, int gutter) {
  Check(!matrices.empty(), ErrorCode::kInvalidArgument, "no matrices to render");
  Check(gutter >= 0, ErrorCode::kInvalidArgument, "gutter must be non-negative");
  const BlockSize size = matrices.front().size;
  std::set<int> modes;
  for (const PredictorMatrix& h : matrices) {
    Check(h.size == size, ErrorCode::kInvalidArgument,
          "matrices of different block sizes in one grid");
    Check(modes.insert(h.mode.index()).second, ErrorCode::kInvalidArgument,
          "mode " + std::to_string(h.mode.index()) + " rendered twice");
  }

  MatrixImage img;
  img.tile_size = size.n();
  img.rows = static_cast<int>(matrices.size());
  img.cols = size.num_refs();
  img.gutter = gutter;
  img.width = img.cols * (img.tile_size + gutter) + gutter;
  img.height = img.rows * (img.tile_size + gutter) + gutter;
  img.pixels.assign(static_cast<size_t>(img.width) * img.height, kGutterValue);

  double global_max = 0.0;
  for (const PredictorMatrix& h : matrices) {
    global_max = std::max(global_max, h.entries.cwiseAbs().maxCoeff());
  }
  const int n = size.n();
  for (int row = 0; row < img.rows; ++row) {
    const Matrix& e = matrices[row].entries;
    const double max_abs =
        normalization == Normalization::kGlobal ? global_max : e.cwiseAbs().maxCoeff();
    for (int col = 0; col < img.cols; ++col) {
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          const size_t at = static_cast<size_t>(img.TileY(row) + y) * img.width +
                            img.TileX(col) + x;
          img.pixels[at] = GrayLevel(e(y * n + x, col), max_abs);
        }
      }
    }
  }
  return img;
}

}  // namespace pdpc
