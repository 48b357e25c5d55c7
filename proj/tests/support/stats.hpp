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

// Test-only statistics helpers: empirical-vs-analytic distribution distances,
// chi-square statistics, and simple bootstrap machinery.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "locpriv/rng.hpp"

namespace test_support {

inline double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs) {
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

/// Kolmogorov-Smirnov distance between sorted samples and a CDF evaluated at
/// those samples (cdf_at[i] = F(sorted[i])).
inline double ks_distance(std::span<const double> cdf_at_sorted) {
  const auto n = static_cast<double>(cdf_at_sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < cdf_at_sorted.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::abs(cdf_at_sorted[i] - lo), std::abs(cdf_at_sorted[i] - hi)));
  }
  return d;
}

/// Pearson chi-square statistic for observed counts against expected
/// probabilities.
inline double chi_square_stat(std::span<const std::size_t> counts, std::span<const double> probs,
                              std::size_t total) {
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = probs[i] * static_cast<double>(total);
    const double diff = static_cast<double>(counts[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

/// Percentile bootstrap confidence interval for a statistic of one sample.
struct Interval {
  double lo;
  double hi;
};

inline Interval bootstrap_ci(std::span<const double> data,
                             const std::function<double(std::span<const double>)>& stat,
                             std::size_t replicates, double level, std::uint64_t seed) {
  locpriv::Rng rng(seed);
  std::vector<double> values(replicates);
  std::vector<double> resample(data.size());
  for (std::size_t b = 0; b < replicates; ++b) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto j = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(data.size()));
      resample[i] = data[j < data.size() ? j : data.size() - 1];
    }
    values[b] = stat(resample);
  }
  std::sort(values.begin(), values.end());
  const double alpha = (1.0 - level) / 2.0;
  const auto lo_idx = static_cast<std::size_t>(alpha * static_cast<double>(replicates - 1));
  const auto hi_idx = static_cast<std::size_t>((1.0 - alpha) * static_cast<double>(replicates - 1));
  return {values[lo_idx], values[hi_idx]};
}

/// Bootstrap CI of a statistic of PAIRED samples (resampling pair indices).
inline Interval paired_bootstrap_ci(
    std::span<const double> a, std::span<const double> b,
    const std::function<double(std::span<const double>, std::span<const double>)>& stat,
    std::size_t replicates, double level, std::uint64_t seed) {
  locpriv::Rng rng(seed);
  std::vector<double> values(replicates);
  std::vector<double> ra(a.size()), rb(b.size());
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto j = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(a.size()));
      if (j >= a.size()) j = a.size() - 1;
      ra[i] = a[j];
      rb[i] = b[j];
    }
    values[rep] = stat(ra, rb);
  }
  std::sort(values.begin(), values.end());
  const double alpha = (1.0 - level) / 2.0;
  const auto lo_idx = static_cast<std::size_t>(alpha * static_cast<double>(replicates - 1));
  const auto hi_idx = static_cast<std::size_t>((1.0 - alpha) * static_cast<double>(replicates - 1));
  return {values[lo_idx], values[hi_idx]};
}

}  // namespace test_support
