// Copyright 2026 The locpriv Authors
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

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace locpriv {

/// Execution policy for data-parallel kernels. Every kernel in this library
/// writes each loop iteration's output to a slot indexed by the iteration,
/// so results are bit-identical for any thread count, including 1.
struct ExecPolicy {
  bool parallel = true;
  int threads = 0;  // 0: OpenMP default

  static ExecPolicy serial() { return {false, 1}; }
};

/// Runs fn(i) for i in [0, n). Under an OpenMP build with policy.parallel the
/// iterations are distributed over threads; otherwise they run in order.
template <typename Fn>
void parallel_for(std::size_t n, [[maybe_unused]] const ExecPolicy& policy, Fn&& fn) {
#ifdef _OPENMP
  if (policy.parallel && n > 1) {
    const int requested = policy.threads > 0 ? policy.threads : omp_get_max_threads();
    // std::size_t loop counters require OpenMP 3.0; use a signed index.
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(requested)
    for (std::int64_t i = 0; i < count; ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace locpriv
