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
//  Training: mode-conditioned reference statistics, the optimal linear
//  predictor, the trace objective and the PDPC parameter search.
//
//  For one (size, mode) the statistics are P = sum r r^T and Q = sum v r^T
//  over the blocks classified into that mode. With P' = P / count and
//  Q' = Q / count the optimal predictor is H = Q' P'^-1, and any linear
//  predictor H scores
//
//    J(H) = Tr(H P' H^T) - 2 Tr(H Q'^T) = E|v - H r|^2 - E|v|^2.
//

#ifndef PDPC_SRC_TRAINING_H_
#define PDPC_SRC_TRAINING_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "src/block.h"
#include "src/intra.h"
#include "src/matrix.h"
#include "src/param_library.h"
#include "src/pdpc_predictor.h"

namespace pdpc {

struct ModeStats {
  BlockSize size;
  PredictionMode mode;
  Matrix p;  // (4N+1) x (4N+1)
  Matrix q;  // N^2 x (4N+1)
  uint64_t count = 0;

  ModeStats(BlockSize s, PredictionMode m)
      : size(s),
        mode(m),
        p(Matrix::Zero(s.num_refs(), s.num_refs())),
        q(Matrix::Zero(s.num_pixels(), s.num_refs())) {}

  // Adds one block: v has N^2 entries, r has 4N+1 in canonical order.
  void Add(std::span<const double> v, std::span<const double> r);
  void Merge(const ModeStats& other);
  Matrix MeanP() const { return p / static_cast<double>(count); }
  Matrix MeanQ() const { return q / static_cast<double>(count); }
};

// Statistics for every (N, mode) that received at least one block.
class StatsTable {
 public:
  using Key = std::pair<int, int>;  // (N, mode)

  ModeStats& At(BlockSize size, PredictionMode mode);
  const ModeStats* Find(BlockSize size, PredictionMode mode) const;
  void Merge(const StatsTable& other);
  const std::map<Key, ModeStats>& entries() const { return entries_; }
  std::map<Key, ModeStats>& entries() { return entries_; }

 private:
  std::map<Key, ModeStats> entries_;
};

struct CorpusOptions {
  std::vector<BlockSize> sizes;
  int stride = 0;  // 0 means N
  bool skip_padded = false;
  // Removes the mean of the references from r and v before accumulation.
  bool centered = false;
  SmoothingPolicy policy;
  int threads = 1;
};

struct LabeledBlock {
  BlockView block;
  ReferenceArray refs;
  PredictionMode mode;
};

// Every block on the stride grid of every image.
std::vector<ExtractedBlock> CollectBlocks(std::span<const GrayImage> images,
                                          BlockSize size, int stride, bool skip_padded);

// argmin over the 35 modes of the SSE of the integer HEVC prediction; ties go
// to the smallest mode index.
PredictionMode ClassifyBlock(const BlockView& block, const ReferenceArray& refs,
                             SmoothingPolicy policy);

std::vector<LabeledBlock> ClassifyBlocks(std::vector<ExtractedBlock> blocks,
                                         SmoothingPolicy policy, int threads);

// Classifies each block and accumulates it into its mode's statistics.
// Raw accumulation sums integer products exactly, so the result does not
// depend on block order or the number of threads.
StatsTable AccumulateStats(std::span<const LabeledBlock> blocks, bool centered,
                           int threads);
StatsTable AccumulateCorpus(std::span<const GrayImage> images,
                            const CorpusOptions& options);

struct OracleSolution {
  PredictorMatrix h;
  double lambda = 0.0;
  double condition_estimate = 0.0;  // 1 / rcond of (P' + lambda I)
};

// H = Q' (P' + lambda I)^-1 with lambda = ridge * trace(P') / (4N+1), via a
// symmetric LDL^T solve. Throws kConditioning when the system is singular and
// kInvalidArgument when count == 0.
OracleSolution SolveOptimal(const ModeStats& stats, double ridge);

// Tr(H P' H^T) - 2 Tr(H Q'^T).
double Objective(const Matrix& h, const ModeStats& stats);
inline double Objective(const PredictorMatrix& h, const ModeStats& stats) {
  return Objective(h.entries, stats);
}

struct SearchSpec {
  int coarse_denominator = 8;  // coarse c grid step 1/8
  int fine_denominator = 32;   // coordinate descent step 1/32
  int sweeps = 3;
  int a_denominator = 8;       // a in {0, 1/8, ..., 1}
  std::vector<int> orders = {2, 4, 6, 8};
};

// J(c) = j0 + 2 g^T c + c^T m c over (c1v, c2v, c1h, c2h) for fixed (a, k),
// with the statistics already weighted by block count.
struct Quadratic {
  double j0 = 0.0;
  std::array<double, 4> g{};
  std::array<std::array<double, 4>, 4> m{};

  double Eval(const std::array<double, 4>& c) const;
  void Add(const Quadratic& other);
};

// Count-weighted objective of the shortcut predictor for one mode, as a
// quadratic in the c's. Equals count * Objective(RealizeMatrix(...)).
Quadratic PdpcQuadratic(const ModeStats& stats, double a, int k, int d,
                        SmoothingPolicy policy);

struct FitResult {
  PdpcParams params;
  double objective = 0.0;           // per block, at params
  double identity_objective = 0.0;  // per block, at the identity point
};

// Grid + coordinate-descent search minimizing the summed objective over
// `stats` (all of the same size; typically the modes of one group).
FitResult FitParams(std::span<const ModeStats* const> stats, BlockSize size,
                    const SearchSpec& search, SmoothingPolicy policy, int threads = 1);
FitResult FitParams(const ModeStats& stats, const SearchSpec& search,
                    SmoothingPolicy policy, int threads = 1);

struct MultisetOptions {
  int num_sets = 2;
  SearchSpec search;
  SmoothingPolicy policy;
  int max_iterations = 10;
  double change_fraction = 0.01;
  int threads = 1;
};

// Alternating refinement of num_sets parameter sets for one block size. Set 0
// is the identity. When `base` is given its sets 1..base.num_sets()-1 are
// copied and kept fixed; only the remaining sets are trained. The result is
// written into `library` (which must share the mode groups).
void FitMultiset(std::span<const LabeledBlock> blocks, BlockSize size,
                 const MultisetOptions& options, const ParamLibrary* base,
                 ParamLibrary& library);

// Fits one parameter set per mode group and stores it in every set >= 1.
// Groups without data get the identity. Returns one result per group.
std::vector<FitResult> FitFromStats(const StatsTable& stats, BlockSize size,
                                    const SearchSpec& search, SmoothingPolicy policy,
                                    ParamLibrary& library, int threads = 1);

}  // namespace pdpc

#endif  // PDPC_SRC_TRAINING_H_
