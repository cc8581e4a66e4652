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

#include "src/param_library.h"

#include <set>
#include <string>

#include "src/status.h"

namespace pdpc {

ModeGroups ModeGroups::Default() {
  std::vector<std::vector<int>> groups(5);
  groups[0] = {0, 1};
  for (int m = 2; m <= 9; ++m) groups[1].push_back(m);
  for (int m = 10; m <= 17; ++m) groups[2].push_back(m);
  for (int m = 18; m <= 25; ++m) groups[3].push_back(m);
  for (int m = 26; m <= 34; ++m) groups[4].push_back(m);
  return FromLists(std::move(groups));
}

ModeGroups ModeGroups::FromLists(std::vector<std::vector<int>> groups) {
  ModeGroups g;
  g.group_of_.fill(-1);
  for (size_t i = 0; i < groups.size(); ++i) {
    Check(!groups[i].empty(), ErrorCode::kFormat,
          "mode group " + std::to_string(i) + " is empty");
    for (int m : groups[i]) {
      Check(m >= 0 && m < kNumModes, ErrorCode::kFormat,
            "mode " + std::to_string(m) + " outside [0, 34]");
      Check(g.group_of_[m] < 0, ErrorCode::kFormat,
            "mode " + std::to_string(m) + " appears in more than one group");
      g.group_of_[m] = static_cast<int>(i);
    }
  }
  for (int m = 0; m < kNumModes; ++m) {
    Check(g.group_of_[m] >= 0, ErrorCode::kFormat,
          "mode " + std::to_string(m) + " is not in any group");
  }
  g.groups_ = std::move(groups);
  return g;
}

ParamLibrary::ParamLibrary(int num_sets, ModeGroups groups)
    : num_sets_(num_sets), groups_(std::move(groups)) {
  Check(num_sets >= 1 && num_sets <= 4, ErrorCode::kInvalidArgument,
        "number of parameter sets must be in [1, 4]");
}

PdpcParams ParamLibrary::Get(BlockSize size, int group, int set) const {
  Check(group >= 0 && group < groups_.num_groups(), ErrorCode::kInvalidArgument,
        "mode group out of range");
  Check(set >= 0 && set < num_sets_, ErrorCode::kInvalidArgument,
        "parameter set out of range");
  if (set == 0) return PdpcParams::Identity(size);
  const auto it = entries_.find({size.n(), group, set});
  Check(it != entries_.end(), ErrorCode::kInvalidArgument,
        "library has no entry for N=" + std::to_string(size.n()) + " group " +
            std::to_string(group) + " set " + std::to_string(set));
  return it->second;
}

void ParamLibrary::Put(BlockSize size, int group, int set, const PdpcParams& params) {
  Check(group >= 0 && group < groups_.num_groups(), ErrorCode::kInvalidArgument,
        "mode group out of range");
  Check(set >= 1 && set < num_sets_, ErrorCode::kInvalidArgument,
        "set 0 is reserved for the identity");
  params.Validate(size);
  entries_[{size.n(), group, set}] = params;
}

bool ParamLibrary::Covers(BlockSize size) const {
  for (int g = 0; g < groups_.num_groups(); ++g) {
    for (int s = 1; s < num_sets_; ++s) {
      if (!entries_.contains({size.n(), g, s})) return false;
    }
  }
  return true;
}

std::vector<BlockSize> ParamLibrary::Sizes() const {
  std::set<int> ns;
  for (const auto& [key, params] : entries_) ns.insert(std::get<0>(key));
  std::vector<BlockSize> out;
  for (int n : ns) out.push_back(BlockSize::Of(n));
  return out;
}

}  // namespace pdpc
