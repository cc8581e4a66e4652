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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "src/status.h"

namespace pdpc {
namespace {

// (num + offset) >> shift on integer-valued input, or num / 2^shift.
double RoundShift(double num, int64_t offset, int shift, Arithmetic arith) {
  if (arith == Arithmetic::kReal) return num / static_cast<double>(int64_t{1} << shift);
  return static_cast<double>((std::llround(num) + offset) >> shift);
}

// Arithmetic right shift by one, or halving.
double Half(double v, Arithmetic arith) {
  if (arith == Arithmetic::kReal) return v / 2.0;
  return static_cast<double>(std::llround(v) >> 1);
}

}  // namespace

int IntraPredAngle(PredictionMode mode) {
  Check(mode.IsAngular(), ErrorCode::kInvalidArgument,
        "mode " + std::to_string(mode.index()) + " is not angular");
  return kIntraPredAngle[mode.index() - 2];
}

int InverseAngle(int angle) {
  switch (angle) {
    case -2: return -4096;
    case -5: return -1638;
    case -9: return -910;
    case -13: return -630;
    case -17: return -482;
    case -21: return -390;
    case -26: return -315;
    case -32: return -256;
    default: return 0;
  }
}

bool SmoothingDecision(PredictionMode mode, BlockSize size) {
  if (mode.index() == kDcMode || size.n() == 4) return false;
  const int min_dist = std::min(std::abs(mode.index() - kVerticalMode),
                                std::abs(mode.index() - kHorizontalMode));
  int threshold = 0;
  switch (size.n()) {
    case 8: threshold = 7; break;
    case 16: threshold = 1; break;
    default: threshold = 0; break;
  }
  return min_dist > threshold;
}

ReferenceArray SmoothRefs121(const ReferenceArray& refs, Arithmetic arith) {
  const std::vector<double> in = refs.ToContour();
  std::vector<double> out = in;
  for (size_t i = 1; i + 1 < in.size(); ++i) {
    out[i] = RoundShift(in[i - 1] + 2.0 * in[i] + in[i + 1], 2, 2, arith);
  }
  return ReferenceArray::FromContour(out, refs.size(), refs.bit_depth());
}

HevcPredictor::HevcPredictor(const ReferenceArray& refs, PredictionMode mode,
                             SmoothingPolicy policy, Arithmetic arith)
    : refs_(policy.enabled && SmoothingDecision(mode, refs.size())
                ? SmoothRefs121(refs, arith)
                : refs),
      mode_(mode),
      policy_(policy),
      arith_(arith) {
  const int n = refs_.size().n();
  if (mode_.index() == kDcMode) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += refs_.top(i) + refs_.left(i);
    dc_ = RoundShift(sum, n, refs_.size().log2n() + 1, arith_);
  }
  if (!mode_.IsAngular()) return;

  angle_ = IntraPredAngle(mode_);
  vertical_ = mode_.index() >= kDiagonalMode;
  std::span<const double> main = vertical_ ? refs_.top() : refs_.left();
  std::span<const double> side = vertical_ ? refs_.left() : refs_.top();

  // main_ref_[i + n] holds ref[i] for i in [-n, 2n].
  ref_offset_ = n;
  main_ref_.assign(3 * n + 1, 0.0);
  main_ref_[ref_offset_] = refs_.corner();
  const int last_projected = (n * angle_) >> 5;
  if (angle_ < 0 && last_projected < -1) {
    for (int i = 1; i <= n; ++i) main_ref_[ref_offset_ + i] = main[i - 1];
    const int inv_angle = InverseAngle(angle_);
    for (int i = last_projected; i <= -1; ++i) {
      main_ref_[ref_offset_ + i] = side[-1 + ((i * inv_angle + 128) >> 8)];
    }
  } else {
    for (int i = 1; i <= 2 * n; ++i) main_ref_[ref_offset_ + i] = main[i - 1];
  }
}

double HevcPredictor::Clip(double v) const {
  if (arith_ == Arithmetic::kReal) return v;
  return std::clamp(v, 0.0, static_cast<double>(MaxSampleValue(refs_.bit_depth())));
}

double HevcPredictor::Planar(int x, int y) const {
  const int n = refs_.size().n();
  const double num = (n - 1 - x) * refs_.left(y) + (x + 1) * refs_.top(n) +
                     (n - 1 - y) * refs_.top(x) + (y + 1) * refs_.left(n);
  return RoundShift(num, n, refs_.size().log2n() + 1, arith_);
}

double HevcPredictor::Dc(int x, int y) const {
  if (!policy_.edge_filters || refs_.size().n() >= 32) return dc_;
  if (x == 0 && y == 0) {
    return RoundShift(refs_.left(0) + 2.0 * dc_ + refs_.top(0), 2, 2, arith_);
  }
  if (y == 0) return RoundShift(refs_.top(x) + 3.0 * dc_, 2, 2, arith_);
  if (x == 0) return RoundShift(refs_.left(y) + 3.0 * dc_, 2, 2, arith_);
  return dc_;
}

double HevcPredictor::Angular(int x, int y) const {
  // `along` runs parallel to the main reference, `depth` away from it.
  const int along = vertical_ ? x : y;
  const int depth = vertical_ ? y : x;
  const int pos = (depth + 1) * angle_;
  const int idx = pos >> 5;
  const int frac = pos & 31;
  double value;
  if (frac == 0) {
    value = MainRef(along + idx + 1);
  } else {
    value = RoundShift((32 - frac) * MainRef(along + idx + 1) +
                           frac * MainRef(along + idx + 2),
                       16, 5, arith_);
  }
  if (angle_ == 0 && policy_.edge_filters && refs_.size().n() < 32 && along == 0) {
    const std::span<const double> side = vertical_ ? refs_.left() : refs_.top();
    value = Clip(value + Half(side[depth] - refs_.corner(), arith_));
  }
  return value;
}

double HevcPredictor::Sample(int x, int y) const {
  switch (mode_.index()) {
    case kPlanarMode: return Planar(x, y);
    case kDcMode: return Dc(x, y);
    default: return Angular(x, y);
  }
}

PredictionBlock HevcPredictor::Block() const {
  PredictionBlock pred(refs_.size());
  const int n = refs_.size().n();
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) pred.at(x, y) = Sample(x, y);
  }
  return pred;
}

PredictionBlock PredictPlanar(const ReferenceArray& refs, Arithmetic arith) {
  return HevcPredictor(refs, PredictionMode::Of(kPlanarMode), {false, false}, arith)
      .Block();
}

PredictionBlock PredictDc(const ReferenceArray& refs, bool edge_filters,
                          Arithmetic arith) {
  return HevcPredictor(refs, PredictionMode::Of(kDcMode), {false, edge_filters}, arith)
      .Block();
}

PredictionBlock PredictAngular(const ReferenceArray& refs, PredictionMode mode,
                               Arithmetic arith) {
  Check(mode.IsAngular(), ErrorCode::kInvalidArgument,
        "angular prediction needs a mode in [2, 34], got " +
            std::to_string(mode.index()));
  return HevcPredictor(refs, mode, {false, false}, arith).Block();
}

PredictionBlock PredictHevc(const ReferenceArray& refs, PredictionMode mode,
                            SmoothingPolicy policy, Arithmetic arith) {
  return HevcPredictor(refs, mode, policy, arith).Block();
}

}  // namespace pdpc
