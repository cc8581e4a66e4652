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
//  Corpus evaluation: every block on the stride grid is classified, predicted
//  with plain HEVC and with each parameter set of its mode group, and the set
//  with the smallest SSE is recorded. SSEs are measured on finalized
//  (rounded, clipped) predictions and summed as integers, so reports do not
//  depend on the thread count.
//

#ifndef PDPC_SRC_EVALUATE_H_
#define PDPC_SRC_EVALUATE_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "src/block.h"
#include "src/intra.h"
#include "src/matrix.h"
#include "src/param_library.h"

namespace pdpc {

struct ModeReport {
  uint64_t count = 0;
  int64_t hevc_sse = 0;
  std::vector<int64_t> set_sse;        // SSE if every block used set s
  std::vector<uint64_t> histogram;     // blocks that selected set s
  std::vector<int64_t> selected_sse_by_set;
  int64_t selected_sse = 0;
  int64_t oracle_sse = 0;

  explicit ModeReport(int num_sets = 1)
      : set_sse(num_sets, 0), histogram(num_sets, 0), selected_sse_by_set(num_sets, 0) {}
  void Add(const ModeReport& other);
};

struct EvalReport {
  int num_sets = 1;
  bool has_oracle = false;
  std::map<std::pair<int, int>, ModeReport> modes;  // (N, mode)
  std::string config;
  std::string digest;

  ModeReport Total() const;
  // 100 * (hevc - selected) / hevc over all blocks.
  double ReductionPercent() const;
  std::string ToText() const;
  std::string ToJson() const;
};

struct EvalOptions {
  std::vector<BlockSize> sizes;
  int stride = 0;
  bool skip_padded = false;
  SmoothingPolicy policy;
  int threads = 1;
};

// `oracle`, when given, adds the SSE of the matching (N, mode) matrix; blocks
// whose mode has no matrix fall back to the HEVC prediction.
EvalReport Evaluate(std::span<const GrayImage> images, const ParamLibrary& library,
                    const EvalOptions& options,
                    const std::vector<PredictorMatrix>* oracle = nullptr);

uint64_t Fnv1a(std::span<const uint8_t> bytes, uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace pdpc

#endif  // PDPC_SRC_EVALUATE_H_
