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

#include <vector>

#include "gtest/gtest.h"
#include "src/pdpc_predictor.h"
#include "src/status.h"

namespace pdpc {
namespace {

constexpr SmoothingPolicy kNoFilters{.enabled = false, .edge_filters = false};

TEST(GrayLevelTest, Mapping) {
  EXPECT_EQ(GrayLevel(0.0, 1.0), 128);
  EXPECT_EQ(GrayLevel(1.0, 1.0), 255);
  EXPECT_EQ(GrayLevel(-1.0, 1.0), 1);
  EXPECT_EQ(GrayLevel(0.5, 1.0), 192);  // 128 + 63.5 rounds away from zero
  EXPECT_EQ(GrayLevel(0.0, 0.0), 128);
  for (double w = -1.0; w <= 1.0; w += 0.01) {
    EXPECT_EQ(GrayLevel(w, 1.0) - 128, 128 - GrayLevel(-w, 1.0)) << w;
  }
}

TEST(RenderTest, ZeroMatrixIsMidGray) {
  const PredictorMatrix zero(BlockSize::Of(4), PredictionMode::Of(3), MatrixKind::kOracle);
  const MatrixImage img = RenderMatrixGrid({&zero, 1}, Normalization::kGlobal, 1);
  EXPECT_EQ(img.rows, 1);
  EXPECT_EQ(img.cols, 17);
  EXPECT_EQ(img.width, 1 + 17 * 5);
  EXPECT_EQ(img.height, 1 + 5);
  for (int c = 0; c < 17; ++c) {
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 4; ++x) ASSERT_EQ(img.at(img.TileX(c) + x, img.TileY(0) + y), 128);
    }
  }
  for (int x = 0; x < img.width; ++x) EXPECT_EQ(img.at(x, 0), kGutterValue);
  for (int y = 0; y < img.height; ++y) EXPECT_EQ(img.at(0, y), kGutterValue);
}

TEST(RenderTest, VerticalModeLightsOneColumnPerTopReference) {
  const BlockSize size = BlockSize::Of(8);
  const PredictorMatrix m = RealizeHevcMatrix(size, PredictionMode::Of(26), kNoFilters);
  const MatrixImage img = RenderMatrixGrid({&m, 1}, Normalization::kGlobal, 0);
  for (int r = 0; r < size.num_refs(); ++r) {
    const int top = r >= 1 && r <= size.n() ? r - 1 : -1;
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) {
        ASSERT_EQ(img.at(img.TileX(r) + x, y), x == top ? 255 : 128) << r;
      }
    }
  }
}

TEST(RenderTest, NegativePeakAndNormalizations) {
  const BlockSize size = BlockSize::Of(4);
  PredictorMatrix a(size, PredictionMode::Of(0), MatrixKind::kOracle);
  PredictorMatrix b(size, PredictionMode::Of(1), MatrixKind::kOracle);
  a.entries(0, 0) = -2.0;
  b.entries(0, 0) = 0.5;
  const std::vector<PredictorMatrix> ms = {a, b};
  const MatrixImage global = RenderMatrixGrid(ms, Normalization::kGlobal, 0);
  EXPECT_EQ(global.at(0, 0), 1);
  EXPECT_EQ(global.at(0, global.TileY(1)), GrayLevel(0.5, 2.0));
  const MatrixImage local = RenderMatrixGrid(ms, Normalization::kPerMatrix, 0);
  EXPECT_EQ(local.at(0, 0), 1);
  EXPECT_EQ(local.at(0, local.TileY(1)), 255);
}

TEST(RenderTest, RejectsMixedSizesAndRepeats) {
  const PredictorMatrix a(BlockSize::Of(4), PredictionMode::Of(0), MatrixKind::kOracle);
  const PredictorMatrix b(BlockSize::Of(8), PredictionMode::Of(1), MatrixKind::kOracle);
  EXPECT_THROW(RenderMatrixGrid(std::vector<PredictorMatrix>{a, b}, Normalization::kGlobal, 1),
               Error);
  EXPECT_THROW(RenderMatrixGrid(std::vector<PredictorMatrix>{a, a}, Normalization::kGlobal, 1),
               Error);
  EXPECT_THROW(RenderMatrixGrid(std::vector<PredictorMatrix>{a}, Normalization::kGlobal, -1),
               Error);
}

}  // namespace
}  // namespace pdpc
