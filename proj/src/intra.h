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
//  HEVC intra predictors: planar, DC, the 33 angular modes, the [1 2 1]
//  reference smoothing and the DC / horizontal / vertical boundary filters.
//
//  Every predictor runs in one of two arithmetic modes. kInteger reproduces
//  the codec's integer rounding (inputs must hold integer values); kReal drops
//  rounding offsets and clipping so the predictor is exactly linear in the
//  references.
//

#ifndef PDPC_SRC_INTRA_H_
#define PDPC_SRC_INTRA_H_

#include <array>
#include <vector>

#include "src/block.h"

namespace pdpc {

enum class Arithmetic { kInteger, kReal };

struct SmoothingPolicy {
  bool enabled = true;       // [1 2 1] reference smoothing per the HEVC table
  bool edge_filters = true;  // DC / horizontal / vertical boundary filters
  bool operator==(const SmoothingPolicy&) const = default;
};

// intraPredAngle for modes 2..34 (index 0 is mode 2).
inline constexpr std::array<int, 33> kIntraPredAngle = {
    32,  26,  21,  17,  13,  9,   5,   2,  0,  -2, -5, -9, -13, -17, -21, -26, -32,
    -26, -21, -17, -13, -9,  -5,  -2,  0,  2,  5,  9,  13,  17,  21,  26,  32};

int IntraPredAngle(PredictionMode mode);
// round(8192 / angle) for the negative angles; 0 otherwise.
int InverseAngle(int angle);

// True iff HEVC smooths the references of (mode, size) with [1 2 1].
bool SmoothingDecision(PredictionMode mode, BlockSize size);

// [1 2 1] smoothing along the left-corner-top contour; both contour
// endpoints are kept.
ReferenceArray SmoothRefs121(const ReferenceArray& refs,
                             Arithmetic arith = Arithmetic::kInteger);

PredictionBlock PredictPlanar(const ReferenceArray& refs,
                              Arithmetic arith = Arithmetic::kInteger);
PredictionBlock PredictDc(const ReferenceArray& refs, bool edge_filters,
                          Arithmetic arith = Arithmetic::kInteger);
// Angular projection without boundary filters. Throws kInvalidArgument for
// modes outside [2, 34].
PredictionBlock PredictAngular(const ReferenceArray& refs, PredictionMode mode,
                               Arithmetic arith = Arithmetic::kInteger);

// Full HEVC prediction for one mode: optional smoothing, then planar / DC /
// angular, then the boundary filters for modes 1, 10 and 26 when N < 32.
// Every sample is computed independently of its neighbours, so Sample() and
// Block() agree bit for bit.
class HevcPredictor {
 public:
  HevcPredictor(const ReferenceArray& refs, PredictionMode mode,
                SmoothingPolicy policy, Arithmetic arith);

  double Sample(int x, int y) const;
  PredictionBlock Block() const;

 private:
  double Planar(int x, int y) const;
  double DcValue() const;
  double Dc(int x, int y) const;
  double Angular(int x, int y) const;
  double MainRef(int i) const { return main_ref_[i + ref_offset_]; }
  double Clip(double v) const;

  ReferenceArray refs_;
  PredictionMode mode_;
  SmoothingPolicy policy_;
  Arithmetic arith_;
  int angle_ = 0;
  bool vertical_ = false;
  std::vector<double> main_ref_;
  int ref_offset_ = 0;
  double dc_ = 0.0;
};

PredictionBlock PredictHevc(const ReferenceArray& refs, PredictionMode mode,
                            SmoothingPolicy policy,
                            Arithmetic arith = Arithmetic::kInteger);

}  // namespace pdpc

#endif  // PDPC_SRC_INTRA_H_
