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

#ifndef PDPC_SRC_PARAM_LIBRARY_H_
#define PDPC_SRC_PARAM_LIBRARY_H_

#include <array>
#include <map>
#include <tuple>
#include <vector>

#include "src/block.h"
#include "src/pdpc_predictor.h"

namespace pdpc {

// A partition of the 35 prediction modes.
class ModeGroups {
 public:
  // {planar, DC}, {2..9}, {10..17}, {18..25}, {26..34}.
  static ModeGroups Default();
  // Throws kFormat unless `groups` partitions [0, 34].
  static ModeGroups FromLists(std::vector<std::vector<int>> groups);

  int num_groups() const { return static_cast<int>(groups_.size()); }
  int GroupOf(PredictionMode mode) const { return group_of_[mode.index()]; }
  const std::vector<int>& Modes(int group) const { return groups_[group]; }
  const std::vector<std::vector<int>>& lists() const { return groups_; }

 private:
  std::vector<std::vector<int>> groups_;
  std::array<int, kNumModes> group_of_{};
};

// PDPC parameter sets per (block size, mode group, set index). Set 0 is
// always the identity (plain HEVC prediction) and is not stored.
class ParamLibrary {
 public:
  ParamLibrary(int num_sets, ModeGroups groups);

  int num_sets() const { return num_sets_; }
  const ModeGroups& groups() const { return groups_; }

  // Set 0 returns PdpcParams::Identity(size). Missing entries throw.
  PdpcParams Get(BlockSize size, int group, int set) const;
  PdpcParams ForMode(BlockSize size, PredictionMode mode, int set) const {
    return Get(size, groups_.GroupOf(mode), set);
  }
  // `set` must be in [1, num_sets).
  void Put(BlockSize size, int group, int set, const PdpcParams& params);
  // True iff every (group, set >= 1) entry exists for `size`.
  bool Covers(BlockSize size) const;
  std::vector<BlockSize> Sizes() const;

  using Key = std::tuple<int, int, int>;  // (N, group, set)
  const std::map<Key, PdpcParams>& entries() const { return entries_; }

 private:
  int num_sets_;
  ModeGroups groups_;
  std::map<Key, PdpcParams> entries_;
};

}  // namespace pdpc

#endif  // PDPC_SRC_PARAM_LIBRARY_H_
