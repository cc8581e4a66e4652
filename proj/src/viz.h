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
//  Predictor matrix rendering. One grid row per matrix, one grid column per
//  reference index; each NxN tile is the matrix column of that reference
//  reshaped to the block raster. Zero maps to 128, +w_max to 255 and -w_max
//  to 1.
//

#ifndef PDPC_SRC_VIZ_H_
#define PDPC_SRC_VIZ_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "src/matrix.h"

namespace pdpc {

enum class Normalization { kGlobal, kPerMatrix };

constexpr uint8_t kGutterValue = 64;

struct MatrixImage {
  int width = 0;
  int height = 0;
  int tile_size = 0;
  int rows = 0;
  int cols = 0;
  int gutter = 0;
  std::vector<uint8_t> pixels;

  uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  // Top-left raster corner of tile (row, col).
  int TileX(int col) const { return gutter + col * (tile_size + gutter); }
  int TileY(int row) const { return gutter + row * (tile_size + gutter); }
};

uint8_t GrayLevel(double weight, double max_abs);

// Throws kInvalidArgument for mixed block sizes or repeated modes.
MatrixImage RenderMatrixGrid(std::span<const PredictorMatrix> matrices,
                             Normalization normalization, int gutter);

}  // namespace pdpc

#endif  // PDPC_SRC_VIZ_H_
