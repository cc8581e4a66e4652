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

#include "src/block.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "src/status.h"

namespace pdpc {

PredictionMode PredictionMode::Of(int index) {
  Check(index >= 0 && index < kNumModes, ErrorCode::kInvalidArgument,
        "prediction mode " + std::to_string(index) + " outside [0, 34]");
  return PredictionMode(index);
}

bool BlockSize::IsValid(int n) { return n == 4 || n == 8 || n == 16 || n == 32; }

BlockSize BlockSize::Of(int n) {
  Check(IsValid(n), ErrorCode::kInvalidArgument,
        "block size " + std::to_string(n) + " not in {4, 8, 16, 32}");
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  return BlockSize(n, log2n);
}

GrayImage GrayImage::Create(int width, int height, int bit_depth,
                            std::vector<uint16_t> samples) {
  Check(width > 0 && height > 0, ErrorCode::kInvalidArgument,
        "image dimensions must be positive");
  Check(bit_depth == 8 || bit_depth == 10, ErrorCode::kInvalidArgument,
        "bit depth must be 8 or 10");
  Check(samples.size() == static_cast<size_t>(width) * height,
        ErrorCode::kInvalidArgument, "sample count != width * height");
  const int max_value = MaxSampleValue(bit_depth);
  for (uint16_t s : samples) {
    Check(s <= max_value, ErrorCode::kInvalidArgument,
          "sample " + std::to_string(s) + " exceeds bit depth");
  }
  GrayImage image;
  image.width = width;
  image.height = height;
  image.bit_depth = bit_depth;
  image.samples = std::move(samples);
  return image;
}

ReferenceArray::ReferenceArray(BlockSize size, int bit_depth)
    : size_(size),
      bit_depth_(bit_depth),
      top_(2 * size.n(), 0.0),
      left_(2 * size.n(), 0.0) {}

ReferenceArray ReferenceArray::FromVector(std::span<const double> v,
                                          BlockSize size, int bit_depth) {
  Check(static_cast<int>(v.size()) == size.num_refs(),
        ErrorCode::kInvalidArgument, "reference vector length != 4N+1");
  ReferenceArray refs(size, bit_depth);
  const int two_n = 2 * size.n();
  refs.corner_ = v[0];
  std::copy_n(v.begin() + 1, two_n, refs.top_.begin());
  std::copy_n(v.begin() + 1 + two_n, two_n, refs.left_.begin());
  return refs;
}

ReferenceArray ReferenceArray::Constant(BlockSize size, int bit_depth,
                                        double value) {
  ReferenceArray refs(size, bit_depth);
  refs.corner_ = value;
  std::fill(refs.top_.begin(), refs.top_.end(), value);
  std::fill(refs.left_.begin(), refs.left_.end(), value);
  return refs;
}

ReferenceArray ReferenceArray::UnitVector(BlockSize size, int index) {
  std::vector<double> v(size.num_refs(), 0.0);
  v.at(index) = 1.0;
  return FromVector(v, size, 8);
}

std::vector<double> ReferenceArray::ToVector() const {
  std::vector<double> v;
  v.reserve(size_.num_refs());
  v.push_back(corner_);
  v.insert(v.end(), top_.begin(), top_.end());
  v.insert(v.end(), left_.begin(), left_.end());
  return v;
}

std::vector<double> ReferenceArray::ToContour() const {
  std::vector<double> c(left_.rbegin(), left_.rend());
  c.push_back(corner_);
  c.insert(c.end(), top_.begin(), top_.end());
  return c;
}

ReferenceArray ReferenceArray::FromContour(std::span<const double> contour,
                                           BlockSize size, int bit_depth) {
  Check(static_cast<int>(contour.size()) == size.num_refs(),
        ErrorCode::kInvalidArgument, "contour length != 4N+1");
  ReferenceArray refs(size, bit_depth);
  const int two_n = 2 * size.n();
  for (int i = 0; i < two_n; ++i) refs.left_[i] = contour[two_n - 1 - i];
  refs.corner_ = contour[two_n];
  for (int i = 0; i < two_n; ++i) refs.top_[i] = contour[two_n + 1 + i];
  return refs;
}

ReferenceArray ReferenceArray::Transposed() const {
  ReferenceArray t = *this;
  std::swap(t.top_, t.left_);
  return t;
}

PredictionBlock PredictionBlock::Transposed() const {
  PredictionBlock t(size_);
  const int n = size_.n();
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) t.at(y, x) = at(x, y);
  }
  return t;
}

ExtractedBlock ExtractBlock(const GrayImage& image, int x0, int y0,
                            BlockSize size) {
  const int n = size.n();
  Check(x0 >= 0 && y0 >= 0 && x0 + n <= image.width && y0 + n <= image.height,
        ErrorCode::kOutOfBounds,
        "block (" + std::to_string(x0) + ", " + std::to_string(y0) + ") of size " +
            std::to_string(n) + " exceeds " + std::to_string(image.width) + "x" +
            std::to_string(image.height) + " image");

  BlockView block{size, x0, y0, std::vector<int>(size.num_pixels())};
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) block.samples[y * n + x] = image.at(x0 + x, y0 + y);
  }

  // Substitution scan order: left[2N-1] .. left[0], corner, top[0] .. top[2N-1].
  const int two_n = 2 * n;
  const int count = 4 * n + 1;
  std::vector<int> scan(count, 0);
  std::vector<bool> available(count, false);
  auto fetch = [&](int pos, int x, int y) {
    if (x >= 0 && y >= 0 && x < image.width && y < image.height) {
      scan[pos] = image.at(x, y);
      available[pos] = true;
    }
  };
  for (int i = 0; i < two_n; ++i) fetch(two_n - 1 - i, x0 - 1, y0 + i);
  fetch(two_n, x0 - 1, y0 - 1);
  for (int i = 0; i < two_n; ++i) fetch(two_n + 1 + i, x0 + i, y0 - 1);

  const auto first = std::find(available.begin(), available.end(), true);
  const bool substituted = std::find(available.begin(), available.end(), false) !=
                           available.end();
  if (first == available.end()) {
    std::fill(scan.begin(), scan.end(), 1 << (image.bit_depth - 1));
  } else {
    if (!available[0]) scan[0] = scan[first - available.begin()];
    for (int i = 1; i < count; ++i) {
      if (!available[i]) scan[i] = scan[i - 1];
    }
  }
  std::vector<double> contour(scan.begin(), scan.end());
  return {std::move(block), ReferenceArray::FromContour(contour, size, image.bit_depth),
          substituted};
}

int FinalizeSample(double value, int bit_depth) {
  const double r = std::round(value);  // half away from zero
  return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(MaxSampleValue(bit_depth))));
}

int64_t FinalizedSse(const BlockView& block, const PredictionBlock& pred,
                     int bit_depth) {
  int64_t sse = 0;
  for (size_t i = 0; i < block.samples.size(); ++i) {
    const int64_t d = block.samples[i] - FinalizeSample(pred.values()[i], bit_depth);
    sse += d * d;
  }
  return sse;
}

double RealSse(const BlockView& block, const PredictionBlock& pred) {
  double sse = 0.0;
  for (size_t i = 0; i < block.samples.size(); ++i) {
    const double d = block.samples[i] - pred.values()[i];
    sse += d * d;
  }
  return sse;
}

}  // namespace pdpc
