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
//  Block geometry: prediction modes, block sizes, images, the causal
//  reference array of an NxN block and its canonical vector ordering.
//
//  Canonical ordering of the 4N+1 references (used by every matrix in the
//  library): index 0 is the corner r[-1,-1], indices 1..2N are the top row
//  r[x,-1] left to right, indices 2N+1..4N are the left column r[-1,y] top to
//  bottom.
//

#ifndef PDPC_SRC_BLOCK_H_
#define PDPC_SRC_BLOCK_H_

#include <cstdint>
#include <span>
#include <vector>

namespace pdpc {

constexpr int kNumModes = 35;
constexpr int kPlanarMode = 0;
constexpr int kDcMode = 1;
constexpr int kHorizontalMode = 10;
constexpr int kDiagonalMode = 18;
constexpr int kVerticalMode = 26;

class PredictionMode {
 public:
  // Throws kInvalidArgument outside [0, 34].
  static PredictionMode Of(int index);

  int index() const { return index_; }
  bool IsAngular() const { return index_ >= 2; }
  bool operator==(const PredictionMode&) const = default;
  auto operator<=>(const PredictionMode&) const = default;

 private:
  explicit constexpr PredictionMode(int index) : index_(index) {}
  int index_;
};

class BlockSize {
 public:
  // Throws kInvalidArgument unless n is one of 4, 8, 16, 32.
  static BlockSize Of(int n);
  static bool IsValid(int n);

  int n() const { return n_; }
  int log2n() const { return log2n_; }
  int num_pixels() const { return n_ * n_; }
  int num_refs() const { return 4 * n_ + 1; }
  bool operator==(const BlockSize&) const = default;
  auto operator<=>(const BlockSize&) const = default;

 private:
  constexpr BlockSize(int n, int log2n) : n_(n), log2n_(log2n) {}
  int n_;
  int log2n_;
};

inline int MaxSampleValue(int bit_depth) { return (1 << bit_depth) - 1; }

struct GrayImage {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::vector<uint16_t> samples;  // row-major

  // Throws kInvalidArgument on bad dimensions or out-of-range samples.
  static GrayImage Create(int width, int height, int bit_depth,
                          std::vector<uint16_t> samples);

  int at(int x, int y) const { return samples[static_cast<size_t>(y) * width + x]; }
};

// The 4N+1 causal references of an NxN block. Values are real so that
// filtered references and unit vectors share the type.
class ReferenceArray {
 public:
  ReferenceArray(BlockSize size, int bit_depth);
  // Builds from a canonical 4N+1 vector.
  static ReferenceArray FromVector(std::span<const double> v, BlockSize size,
                                   int bit_depth);
  static ReferenceArray Constant(BlockSize size, int bit_depth, double value);
  static ReferenceArray UnitVector(BlockSize size, int index);

  BlockSize size() const { return size_; }
  int bit_depth() const { return bit_depth_; }

  double corner() const { return corner_; }
  double& corner() { return corner_; }
  // i in [0, 2N).
  double top(int i) const { return top_[i]; }
  double& top(int i) { return top_[i]; }
  double left(int i) const { return left_[i]; }
  double& left(int i) { return left_[i]; }
  std::span<const double> top() const { return top_; }
  std::span<const double> left() const { return left_; }

  std::vector<double> ToVector() const;
  // Left reversed, corner, top: one 1-D signal of length 4N+1.
  std::vector<double> ToContour() const;
  static ReferenceArray FromContour(std::span<const double> contour,
                                    BlockSize size, int bit_depth);
  // Swaps the roles of the top row and the left column.
  ReferenceArray Transposed() const;

  static int CornerIndex() { return 0; }
  int TopIndex(int x) const { return 1 + x; }
  int LeftIndex(int y) const { return 1 + 2 * size_.n() + y; }

  bool operator==(const ReferenceArray&) const = default;

 private:
  BlockSize size_;
  int bit_depth_;
  double corner_ = 0.0;
  std::vector<double> top_;
  std::vector<double> left_;
};

struct BlockView {
  BlockSize size;
  int origin_x = 0;
  int origin_y = 0;
  std::vector<int> samples;  // raster order, N*N

  int at(int x, int y) const { return samples[y * size.n() + x]; }
};

// Real-valued N*N prediction in raster order.
class PredictionBlock {
 public:
  explicit PredictionBlock(BlockSize size)
      : size_(size), values_(size.num_pixels(), 0.0) {}

  BlockSize size() const { return size_; }
  double at(int x, int y) const { return values_[y * size_.n() + x]; }
  double& at(int x, int y) { return values_[y * size_.n() + x]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  PredictionBlock Transposed() const;
  bool operator==(const PredictionBlock&) const = default;

 private:
  BlockSize size_;
  std::vector<double> values_;
};

struct ExtractedBlock {
  BlockView block;
  ReferenceArray refs;
  // True when at least one reference had to be substituted.
  bool substituted = false;
};

// Cuts the NxN block at (x0, y0) out of `image` together with its 4N+1
// references taken from the original pixels. Missing references are
// substituted HEVC-style: the scan runs from the bottom of the left column up
// to the corner and then along the top row; a missing first sample takes the
// first available one, every other missing sample copies its predecessor. With
// no available reference at all every sample is 2^(bit_depth-1).
ExtractedBlock ExtractBlock(const GrayImage& image, int x0, int y0,
                            BlockSize size);

// Round half away from zero, then clip to the sample range.
int FinalizeSample(double value, int bit_depth);

// Sum of squared differences between the block and the finalized prediction.
int64_t FinalizedSse(const BlockView& block, const PredictionBlock& pred,
                     int bit_depth);
// Real-valued sum of squared differences.
double RealSse(const BlockView& block, const PredictionBlock& pred);

}  // namespace pdpc

#endif  // PDPC_SRC_BLOCK_H_
