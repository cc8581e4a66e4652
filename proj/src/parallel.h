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

#ifndef PDPC_SRC_PARALLEL_H_
#define PDPC_SRC_PARALLEL_H_

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace pdpc {

// Splits [0, count) into `threads` contiguous chunks and runs
// fn(worker, begin, end) on each. Chunk boundaries depend only on `count`
// and `threads`; callers merge per-worker results in worker order. The first
// exception thrown by a worker is rethrown on the calling thread.
template <typename Fn>
void ParallelChunks(size_t count, int threads, Fn&& fn) {
  const size_t workers =
      std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(std::max(threads, 1)),
                                           std::max<size_t>(count, 1)));
  if (workers == 1) {
    fn(size_t{0}, size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
      const size_t begin = count * w / workers;
      const size_t end = count * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          fn(w, begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline size_t NumChunks(size_t count, int threads) {
  return std::max<size_t>(
      1, std::min<size_t>(static_cast<size_t>(std::max(threads, 1)),
                          std::max<size_t>(count, 1)));
}

}  // namespace pdpc

#endif  // PDPC_SRC_PARALLEL_H_
