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

#include "locpriv/power_policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "locpriv/errors.hpp"

namespace locpriv {

namespace {

constexpr double kMeanTolRel = 1e-10;

void require_feasible_mean(const PowerLevelSet& levels, double mu_mw) {
  if (!(mu_mw > levels.min_mw() && mu_mw < levels.max_mw())) {
    throw InfeasibleMean("mean outside level range");
  }
}

/// pmf proportional to exp(-alpha * x_i), evaluated with a shifted exponent so
/// that large |alpha| underflows gracefully instead of overflowing.
std::vector<double> exponential_probs(std::span<const double> x, double alpha, double* coeff_k) {
  double max_exponent = -alpha * x[0];
  for (double xi : x) max_exponent = std::max(max_exponent, -alpha * xi);
  std::vector<double> p(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = std::exp(-alpha * x[i] - max_exponent);
    sum += p[i];
  }
  for (double& pi : p) pi /= sum;
  if (coeff_k != nullptr) *coeff_k = std::exp(-max_exponent) / sum;
  return p;
}

double pmf_mean(std::span<const double> x, std::span<const double> p) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m += x[i] * p[i];
  return m;
}

std::vector<double> normal_probs(std::span<const double> x, double center, double spread) {
  const double inv = 1.0 / (2.0 * spread * spread);
  double max_exponent = -std::numeric_limits<double>::infinity();
  for (double xi : x) max_exponent = std::max(max_exponent, -(xi - center) * (xi - center) * inv);
  std::vector<double> p(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - center;
    p[i] = std::exp(-d * d * inv - max_exponent);
    sum += p[i];
  }
  for (double& pi : p) pi /= sum;
  return p;
}

}  // namespace

PowerLevelSet::PowerLevelSet(std::vector<double> levels_mw) : levels_(std::move(levels_mw)) {
  if (levels_.size() < 2) throw std::invalid_argument("need at least two power levels");
  double prev = 0.0;
  for (double l : levels_) {
    if (!(l > prev)) throw std::invalid_argument("power levels must be positive and strictly increasing");
    prev = l;
  }
}

double PowerLevelSet::arithmetic_mean_mw() const {
  double s = 0.0;
  for (double l : levels_) s += l;
  return s / static_cast<double>(levels_.size());
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::uniform: return "uniform";
    case PolicyKind::discretized_normal: return "discretized_normal";
    case PolicyKind::discretized_exponential: return "discretized_exponential";
  }
  throw std::logic_error("unknown policy kind");
}

PowerDistribution solve_max_entropy(const PowerLevelSet& levels, double mu_mw) {
  require_feasible_mean(levels, mu_mw);
  const auto& x = levels.levels_mw();

  const auto mean_at = [&](double alpha) { return pmf_mean(x, exponential_probs(x, alpha, nullptr)); };

  // The alpha -> mean map is strictly decreasing (its derivative is the
  // negated pmf variance). Expand until the root is bracketed, then bisect.
  double lo = -1.0, hi = 1.0;
  int guard = 0;
  while (mean_at(lo) < mu_mw) {
    lo *= 2.0;
    if (++guard > 400) throw InfeasibleMean("mean numerically indistinguishable from a level bound");
  }
  while (mean_at(hi) > mu_mw) {
    hi *= 2.0;
    if (++guard > 400) throw InfeasibleMean("mean numerically indistinguishable from a level bound");
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mean_at(mid) > mu_mw) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double alpha = 0.5 * (lo + hi);

  PowerDistribution dist{levels, {}, PolicyKind::discretized_exponential};
  dist.rate_alpha = alpha;
  dist.probs = exponential_probs(x, alpha, &dist.coeff_k);
  const double achieved = pmf_mean(x, dist.probs);
  if (std::abs(achieved - mu_mw) > kMeanTolRel * mu_mw) {
    throw std::runtime_error("max-entropy solver did not reach the mean tolerance");
  }
  return dist;
}

PowerDistribution make_uniform(const PowerLevelSet& levels) {
  PowerDistribution dist{levels, {}, PolicyKind::uniform};
  dist.probs.assign(levels.size(), 1.0 / static_cast<double>(levels.size()));
  return dist;
}

PowerDistribution make_discretized_normal(const PowerLevelSet& levels, double mu_mw, double spread_mw) {
  require_feasible_mean(levels, mu_mw);
  if (!(spread_mw > 0.0)) throw std::domain_error("spread must be > 0");
  const auto& x = levels.levels_mw();

  const auto mean_at = [&](double c) { return pmf_mean(x, normal_probs(x, c, spread_mw)); };

  // mean is strictly increasing in the center (Gaussian tilt is an
  // exponential family in c), so bracket and bisect as above.
  const double span = levels.max_mw() - levels.min_mw();
  double lo = levels.min_mw() - span, hi = levels.max_mw() + span;
  int guard = 0;
  while (mean_at(lo) > mu_mw) {
    lo -= std::abs(lo) + span;
    if (++guard > 400) throw InfeasibleMean("mean not reachable by centered gaussian weights");
  }
  while (mean_at(hi) < mu_mw) {
    hi += std::abs(hi) + span;
    if (++guard > 400) throw InfeasibleMean("mean not reachable by centered gaussian weights");
  }
  double center = 0.5 * (lo + hi);
  for (int it = 0; it < 1000; ++it) {
    center = 0.5 * (lo + hi);
    const double m = mean_at(center);
    if (std::abs(m - mu_mw) <= kMeanTolRel * mu_mw) break;
    if (m < mu_mw) {
      lo = center;
    } else {
      hi = center;
    }
  }

  PowerDistribution dist{levels, normal_probs(x, center, spread_mw), PolicyKind::discretized_normal};
  dist.center = center;
  dist.spread = spread_mw;
  if (std::abs(pmf_mean(x, dist.probs) - mu_mw) > kMeanTolRel * mu_mw) {
    throw std::runtime_error("discretized-normal solver did not reach the mean tolerance");
  }
  return dist;
}

double entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double entropy(const PowerDistribution& dist) { return entropy(dist.probs); }

double mean_power(const PowerDistribution& dist) {
  return pmf_mean(dist.levels.levels_mw(), dist.probs);
}

PowerDraw sample_power(const PowerDistribution& dist, Rng& rng) {
  const double u = rng.uniform01();
  double cum = 0.0;
  const std::size_t n = dist.probs.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cum += dist.probs[i];
    if (u < cum) return {i, dist.levels.levels_mw()[i]};
  }
  return {n - 1, dist.levels.levels_mw()[n - 1]};
}

}  // namespace locpriv
