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

#include "locpriv/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace locpriv {

namespace {

constexpr double kSeriesCutoff = 30.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTwoPi = 6.283185307179586476925287;

// Power series sums. I0(a) = sum t^k/(k!)^2 and I1(a) = (a/2) sum
// t^k/(k!(k+1)!) with t = a^2/4; at a=30 the largest summand is ~1e11, well
// inside the double range.
struct SeriesSums {
  double i0;
  double i1_over_half_a;
};

SeriesSums series_sums(double a) {
  const double t = 0.25 * a * a;
  double s0 = 1.0, s1 = 1.0;
  double t0 = 1.0, t1 = 1.0;
  for (int k = 1; k <= 200; ++k) {
    t0 *= t / (static_cast<double>(k) * k);
    t1 *= t / (static_cast<double>(k) * (k + 1));
    s0 += t0;
    s1 += t1;
    if (t0 < kEps * s0 && t1 < kEps * s1) break;
  }
  return {s0, s1};
}

// Large-argument correction sums S so that
//   I_nu(a) = e^a / sqrt(2 pi a) * S_nu(a).
// Term recurrences: S0 terms grow by (2k-1)^2/(8k a), S1 terms by
// ((2k-1)^2 - 4)/(8k a). The series is asymptotic; terms are summed while
// they decrease, which reaches ~1e-16 relative for a >= 30.
struct AsymptoticSums {
  double s0;
  double s1;
};

AsymptoticSums asymptotic_sums(double a) {
  double s0 = 1.0, s1 = 1.0;
  double t0 = 1.0, t1 = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double base = 8.0 * k * a;
    const double next0 = t0 * (odd * odd / base);
    const double next1 = t1 * ((odd * odd - 4.0) / base);
    if (std::abs(next0) >= std::abs(t0)) break;  // divergent tail reached
    t0 = next0;
    t1 = next1;
    s0 += t0;
    s1 += t1;
    if (std::abs(t0) < kEps * s0) break;
  }
  return {s0, s1};
}

void require_nonnegative(double a) {
  if (!(a >= 0.0)) throw std::domain_error("bessel argument must be >= 0");
}

}  // namespace

double log_bessel_i0(double a) {
  require_nonnegative(a);
  if (a <= kSeriesCutoff) {
    return std::log(series_sums(a).i0);
  }
  const auto s = asymptotic_sums(a);
  return a - 0.5 * std::log(kTwoPi * a) + std::log(s.s0);
}

double bessel_ratio_i1_i0(double a) {
  require_nonnegative(a);
  if (a <= kSeriesCutoff) {
    const auto s = series_sums(a);
    return 0.5 * a * s.i1_over_half_a / s.i0;
  }
  const auto s = asymptotic_sums(a);
  return s.s1 / s.s0;
}

double bessel_ratio_i1_i0_over_a(double a) {
  require_nonnegative(a);
  if (a <= kSeriesCutoff) {
    const auto s = series_sums(a);
    return 0.5 * s.i1_over_half_a / s.i0;
  }
  const auto s = asymptotic_sums(a);
  return s.s1 / (s.s0 * a);
}

}  // namespace locpriv
