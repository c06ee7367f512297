// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "spot/matrix.hpp"

namespace spot {

// Global worker cap shared by all parallel loops. Defaults to 1 (sequential);
// 0 selects std::thread::hardware_concurrency().
int max_threads();
void set_max_threads(int n);

// Splits [begin, end) into contiguous chunks, one per worker. Workers write
// to disjoint output slots only, so results are bit-identical to a sequential
// run regardless of the thread count. The first exception raised by any
// chunk is rethrown on the calling thread after all workers join.
template <typename F>
void parallel_for(Index begin, Index end, F&& chunk_fn) {
  const Index count = end - begin;
  if (count <= 0) return;
  int workers = max_threads();
  if (workers > count) workers = static_cast<int>(count);
  if (workers <= 1) {
    chunk_fn(begin, end);
    return;
  }

  std::exception_ptr error;
  std::mutex error_mutex;
  auto guarded = [&](Index lo, Index hi) {
    try {
      chunk_fn(lo, hi);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  const Index chunk = (count + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) {
    const Index lo = begin + chunk * w;
    const Index hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&guarded, lo, hi] { guarded(lo, hi); });
  }
  guarded(begin, std::min(end, begin + chunk));
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace spot
