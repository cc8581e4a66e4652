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

#include "src/intra.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "src/block.h"
#include "src/status.h"
#include "tests/test_util.h"

namespace pdpc {
namespace {

using testing::RandomRefs;
using testing::RefHevc;
using testing::Rng;

constexpr SmoothingPolicy kNoFilters{.enabled = false, .edge_filters = false};
constexpr SmoothingPolicy kAllOn{.enabled = true, .edge_filters = true};

ReferenceArray Refs(int n, double corner, double top, double left) {
  ReferenceArray r(BlockSize::Of(n), 8);
  r.corner() = corner;
  for (int i = 0; i < 2 * n; ++i) {
    r.top(i) = top;
    r.left(i) = left;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Core types

TEST(BlockSizeTest, AcceptsOnlyCodecSizes) {
  for (int n : {4, 8, 16, 32}) EXPECT_TRUE(BlockSize::IsValid(n));
  for (int n : {0, 2, 6, 64}) {
    EXPECT_FALSE(BlockSize::IsValid(n));
    EXPECT_THROW(BlockSize::Of(n), Error);
  }
  EXPECT_EQ(BlockSize::Of(8).num_refs(), 33);
  EXPECT_EQ(BlockSize::Of(16).log2n(), 4);
}

TEST(PredictionModeTest, RangeChecked) {
  EXPECT_THROW(PredictionMode::Of(-1), Error);
  EXPECT_THROW(PredictionMode::Of(35), Error);
  EXPECT_FALSE(PredictionMode::Of(1).IsAngular());
  EXPECT_TRUE(PredictionMode::Of(2).IsAngular());
}

TEST(ReferenceArrayTest, ContourRoundTrip) {
  Rng rng(1);
  const ReferenceArray r = RandomRefs(rng, BlockSize::Of(8));
  const std::vector<double> c = r.ToContour();
  ASSERT_EQ(c.size(), 33u);
  EXPECT_EQ(c[0], r.left(15));
  EXPECT_EQ(c[16], r.corner());
  EXPECT_EQ(c[17], r.top(0));
  EXPECT_EQ(ReferenceArray::FromContour(c, r.size(), 8), r);
  EXPECT_EQ(r.Transposed().Transposed(), r);
  EXPECT_EQ(r.Transposed().top(3), r.left(3));
}

TEST(ExtractBlockTest, ConstantImage) {
  const GrayImage img =
      GrayImage::Create(16, 16, 8, std::vector<uint16_t>(256, 128));
  const ExtractedBlock b = ExtractBlock(img, 4, 4, BlockSize::Of(4));
  for (double v : b.refs.ToVector()) EXPECT_EQ(v, 128);
  for (int v : b.block.samples) EXPECT_EQ(v, 128);
}

TEST(ExtractBlockTest, OriginUsesHalfRange) {
  Rng rng(2);
  for (int bd : {8, 10}) {
    const GrayImage img = testing::RandomImage(rng, 16, 16, bd);
    const ExtractedBlock b = ExtractBlock(img, 0, 0, BlockSize::Of(8));
    EXPECT_TRUE(b.substituted);
    for (double v : b.refs.ToVector()) EXPECT_EQ(v, 1 << (bd - 1));
  }
}

TEST(ExtractBlockTest, TopExtensionReplicatesLastAvailable) {
  // 8x8 ramp: the top extension of the block at (4, 4) runs off the right
  // edge and must repeat top[3] (pixel (7, 3)).
  std::vector<uint16_t> s(64);
  for (int i = 0; i < 64; ++i) s[i] = static_cast<uint16_t>(i);
  const GrayImage img = GrayImage::Create(8, 8, 8, s);
  const ExtractedBlock b = ExtractBlock(img, 4, 4, BlockSize::Of(4));
  for (int x = 0; x < 4; ++x) EXPECT_EQ(b.refs.top(x), 3 * 8 + 4 + x);
  for (int x = 4; x < 8; ++x) EXPECT_EQ(b.refs.top(x), b.refs.top(3));
  // The left extension below the image repeats left[3] too.
  for (int y = 4; y < 8; ++y) EXPECT_EQ(b.refs.left(y), b.refs.left(3));
  EXPECT_EQ(b.refs.corner(), 3 * 8 + 3);
}

TEST(ExtractBlockTest, MatchesBruteForceEverywhere) {
  Rng rng(3);
  const GrayImage img = testing::RandomImage(rng, 40, 24);
  for (int n : {4, 8, 16}) {
    for (int y0 = 0; y0 + n <= img.height; y0 += 4) {
      for (int x0 = 0; x0 + n <= img.width; x0 += 4) {
        const ExtractedBlock b = ExtractBlock(img, x0, y0, BlockSize::Of(n));
        const std::vector<int> want = testing::RefExtract(img, x0, y0, n);
        const std::vector<double> got = b.refs.ToVector();
        for (size_t j = 0; j < want.size(); ++j) {
          ASSERT_EQ(got[j], want[j]) << "n=" << n << " at " << x0 << "," << y0 << " j=" << j;
        }
        for (int y = 0; y < n; ++y) {
          for (int x = 0; x < n; ++x) ASSERT_EQ(b.block.at(x, y), img.at(x0 + x, y0 + y));
        }
      }
    }
  }
}

TEST(ExtractBlockTest, RejectsOutOfRange) {
  Rng rng(4);
  const GrayImage img = testing::RandomImage(rng, 16, 16);
  try {
    ExtractBlock(img, 12, 0, BlockSize::Of(8));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfBounds);
  }
  EXPECT_THROW(ExtractBlock(img, -1, 0, BlockSize::Of(4)), Error);
}

TEST(FinalizeTest, RoundsHalfAwayFromZeroThenClips) {
  EXPECT_EQ(FinalizeSample(2.5, 8), 3);
  EXPECT_EQ(FinalizeSample(2.49, 8), 2);
  EXPECT_EQ(FinalizeSample(-0.5, 8), 0);
  EXPECT_EQ(FinalizeSample(255.5, 8), 255);
  EXPECT_EQ(FinalizeSample(1023.2, 10), 1023);
}

// ---------------------------------------------------------------------------
// HEVC predictors

TEST(SmoothingDecisionTest, TableExamples) {
  EXPECT_FALSE(SmoothingDecision(PredictionMode::Of(26), BlockSize::Of(32)));
  EXPECT_TRUE(SmoothingDecision(PredictionMode::Of(0), BlockSize::Of(8)));
  EXPECT_FALSE(SmoothingDecision(PredictionMode::Of(2), BlockSize::Of(4)));
}

TEST(SmoothingDecisionTest, MatchesExplicitModeLists) {
  for (int n : {4, 8, 16, 32}) {
    for (int m = 0; m < kNumModes; ++m) {
      EXPECT_EQ(SmoothingDecision(PredictionMode::Of(m), BlockSize::Of(n)),
                testing::RefSmoothingTable(m, n))
          << "mode " << m << " N " << n;
    }
  }
}

TEST(SmoothRefsTest, HandExample) {
  ReferenceArray r(BlockSize::Of(4), 8);
  r.top(0) = 8;
  const ReferenceArray s = SmoothRefs121(r);
  EXPECT_EQ(s.corner(), 2);
  EXPECT_EQ(s.top(0), 4);
  EXPECT_EQ(s.top(1), 2);
  // Contour endpoints are left alone.
  EXPECT_EQ(s.top(7), r.top(7));
  EXPECT_EQ(s.left(7), r.left(7));
}

TEST(SmoothRefsTest, RealModeIsExactConvolution) {
  Rng rng(5);
  const ReferenceArray r = RandomRefs(rng, BlockSize::Of(8));
  const std::vector<double> c = r.ToContour();
  const std::vector<double> s = SmoothRefs121(r, Arithmetic::kReal).ToContour();
  for (size_t i = 1; i + 1 < c.size(); ++i) {
    EXPECT_DOUBLE_EQ(s[i], (c[i - 1] + 2 * c[i] + c[i + 1]) / 4.0);
  }
}

TEST(PlanarTest, HandExample) {
  ReferenceArray r(BlockSize::Of(4), 8);
  r.top(4) = 8;
  r.left(4) = 8;
  EXPECT_EQ(PredictPlanar(r).at(0, 0), 2);
}

TEST(DcTest, HandExamples) {
  const ReferenceArray r = Refs(4, 0, 10, 20);
  const PredictionBlock plain = PredictDc(r, false);
  for (double v : plain.values()) EXPECT_EQ(v, 15);
  const PredictionBlock filtered = PredictDc(r, true);
  EXPECT_EQ(filtered.at(1, 0), 14);
  EXPECT_EQ(filtered.at(0, 1), (20 + 45 + 2) >> 2);
  EXPECT_EQ(filtered.at(0, 0), (20 + 30 + 10 + 2) >> 2);
  EXPECT_EQ(filtered.at(2, 2), 15);
}

TEST(AngularTest, PureCopies) {
  Rng rng(6);
  const ReferenceArray r = RandomRefs(rng, BlockSize::Of(8));
  const PredictionBlock v = PredictAngular(r, PredictionMode::Of(26));
  const PredictionBlock h = PredictAngular(r, PredictionMode::Of(10));
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      EXPECT_EQ(v.at(x, y), r.top(x));
      EXPECT_EQ(h.at(x, y), r.left(y));
    }
  }
}

TEST(AngularTest, DiagonalThroughCorner) {
  const ReferenceArray r = Refs(4, 50, 60, 40);
  const PredictionBlock p = PredictAngular(r, PredictionMode::Of(18));
  EXPECT_EQ(p.at(0, 0), 50);
  EXPECT_EQ(p.at(1, 0), 60);
  EXPECT_EQ(p.at(0, 1), 40);
  EXPECT_EQ(p.at(3, 3), 50);
}

TEST(AngularTest, RejectsNonAngularModes) {
  const ReferenceArray r = Refs(4, 0, 0, 0);
  EXPECT_THROW(PredictAngular(r, PredictionMode::Of(1)), Error);
}

TEST(HevcTest, VerticalBoundaryFilter) {
  const ReferenceArray r = Refs(8, 100, 100, 120);
  const PredictionBlock p = PredictHevc(r, PredictionMode::Of(26), kAllOn);
  for (int y = 0; y < 8; ++y) {
    EXPECT_EQ(p.at(0, y), 110);
    for (int x = 1; x < 8; ++x) EXPECT_EQ(p.at(x, y), 100);
  }
}

TEST(HevcTest, BoundaryFilterClipsAndSkips32) {
  const ReferenceArray r = Refs(8, 0, 250, 255);
  EXPECT_EQ(PredictHevc(r, PredictionMode::Of(26), kAllOn).at(0, 0), 255);
  const ReferenceArray r32 = Refs(32, 100, 100, 120);
  EXPECT_EQ(PredictHevc(r32, PredictionMode::Of(26), kAllOn).at(0, 0), 100);
}

TEST(HevcTest, MatchesReferenceDecoderAllModesAndSizes) {
  Rng rng(7);
  for (int bd : {8, 10}) {
    for (int n : {4, 8, 16, 32}) {
      for (int trial = 0; trial < 6; ++trial) {
        const ReferenceArray r = RandomRefs(rng, BlockSize::Of(n), bd);
        for (int m = 0; m < kNumModes; ++m) {
          for (SmoothingPolicy pol : {kNoFilters, kAllOn}) {
            const PredictionBlock got = PredictHevc(r, PredictionMode::Of(m), pol);
            const std::vector<int> want = RefHevc(r, m, pol.enabled, pol.edge_filters);
            for (int i = 0; i < n * n; ++i) {
              ASSERT_EQ(got.values()[i], want[i])
                  << "bd " << bd << " N " << n << " mode " << m << " pixel " << i;
            }
          }
        }
      }
    }
  }
}

TEST(HevcTest, RealArithmeticMatchesLineProjection) {
  // Pixels whose direction ends on the main reference (or the corner) are
  // compared with a real-precision walk; 1000 random instances.
  Rng rng(8);
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 << (trial % 4);
    const int m = 2 + static_cast<int>(rng() % 33);
    const ReferenceArray r = RandomRefs(rng, BlockSize::Of(n));
    const PredictionBlock p = PredictAngular(r, PredictionMode::Of(m), Arithmetic::kReal);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double want = testing::RefAngularReal(r, m, x, y);
        if (std::isnan(want)) continue;
        ASSERT_NEAR(p.at(x, y), want, 1e-9) << "N " << n << " mode " << m;
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 100000);
}

TEST(HevcTest, TransposeSymmetry) {
  Rng rng(9);
  for (int n : {4, 8, 16, 32}) {
    const ReferenceArray r = RandomRefs(rng, BlockSize::Of(n));
    for (int m = 2; m < kNumModes; ++m) {
      for (SmoothingPolicy pol : {kNoFilters, kAllOn}) {
        const PredictionBlock a = PredictHevc(r, PredictionMode::Of(m), pol);
        const PredictionBlock b = PredictHevc(r.Transposed(), PredictionMode::Of(36 - m), pol);
        ASSERT_EQ(a, b.Transposed()) << "N " << n << " mode " << m;
      }
    }
  }
}

TEST(HevcTest, SampleEqualsBlock) {
  Rng rng(10);
  for (int n : {4, 8, 16, 32}) {
    const ReferenceArray r = RandomRefs(rng, BlockSize::Of(n));
    for (int m = 0; m < kNumModes; ++m) {
      for (Arithmetic arith : {Arithmetic::kInteger, Arithmetic::kReal}) {
        const HevcPredictor pred(r, PredictionMode::Of(m), kAllOn, arith);
        const PredictionBlock block = pred.Block();
        for (int y = 0; y < n; ++y) {
          for (int x = 0; x < n; ++x) ASSERT_EQ(pred.Sample(x, y), block.at(x, y));
        }
      }
    }
  }
}

TEST(HevcTest, ConstantReferencesGiveConstantPrediction) {
  for (int n : {4, 8, 16, 32}) {
    const ReferenceArray r = ReferenceArray::Constant(BlockSize::Of(n), 8, 77);
    for (int m = 0; m < kNumModes; ++m) {
      for (Arithmetic arith : {Arithmetic::kInteger, Arithmetic::kReal}) {
        const PredictionBlock p = PredictHevc(r, PredictionMode::Of(m), kAllOn, arith);
        for (double v : p.values()) ASSERT_EQ(v, 77);
      }
    }
  }
}

TEST(HevcTest, RealArithmeticIsLinear) {
  Rng rng(11);
  for (int n : {4, 8}) {
    const ReferenceArray r1 = testing::RandomRealRefs(rng, BlockSize::Of(n));
    const ReferenceArray r2 = testing::RandomRealRefs(rng, BlockSize::Of(n));
    std::vector<double> sum(r1.size().num_refs());
    for (size_t j = 0; j < sum.size(); ++j) sum[j] = 2 * r1.ToVector()[j] - r2.ToVector()[j];
    const ReferenceArray rs = ReferenceArray::FromVector(sum, r1.size(), 8);
    for (int m = 0; m < kNumModes; ++m) {
      const PredictionMode mode = PredictionMode::Of(m);
      const PredictionBlock a = PredictHevc(r1, mode, kAllOn, Arithmetic::kReal);
      const PredictionBlock b = PredictHevc(r2, mode, kAllOn, Arithmetic::kReal);
      const PredictionBlock c = PredictHevc(rs, mode, kAllOn, Arithmetic::kReal);
      for (int i = 0; i < n * n; ++i) {
        ASSERT_NEAR(c.values()[i], 2 * a.values()[i] - b.values()[i], 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace pdpc
