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

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

namespace locpriv {

/// Deterministic random generator with explicitly implemented variate
/// transforms. The engine (mt19937_64) and the transforms below are pinned by
/// this library, not delegated to std::*_distribution, so a given seed yields
/// the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Two independent N(0, sigma^2) variates via the Marsaglia polar method.
  std::pair<double, double> gaussian_pair(double sigma) {
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = sigma * std::sqrt(-2.0 * std::log(s) / s);
    return {u * f, v * f};
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Stable 64-bit mix of a master seed with an id tuple. Used to give every
/// Monte Carlo unit (grid cell, trial, frame) its own generator so that
/// results depend only on the unit's coordinates, never on scheduling, and
/// adding units elsewhere in a grid does not perturb existing ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> ids) {
  std::uint64_t state = detail::splitmix64(master);
  for (std::uint64_t id : ids) state = detail::splitmix64(state ^ id);
  return state;
}

}  // namespace locpriv
