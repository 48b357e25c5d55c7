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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "locpriv/rng.hpp"

namespace locpriv {

/// The discrete transmit power levels an anchor can use, strictly increasing,
/// in linear mW, at least two of them.
class PowerLevelSet {
 public:
  explicit PowerLevelSet(std::vector<double> levels_mw);

  const std::vector<double>& levels_mw() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  double min_mw() const { return levels_.front(); }
  double max_mw() const { return levels_.back(); }
  double arithmetic_mean_mw() const;

 private:
  std::vector<double> levels_;
};

enum class PolicyKind { uniform, discretized_normal, discretized_exponential };

std::string to_string(PolicyKind kind);

/// A pmf over a PowerLevelSet. For the exponential kind, probs[i] equals
/// coeff_k * exp(-rate_alpha * x_i); for the normal kind, probs[i] is the
/// renormalized Gaussian weight exp(-(x_i - center)^2 / (2 spread^2)).
struct PowerDistribution {
  PowerLevelSet levels;
  std::vector<double> probs;
  PolicyKind kind;
  // exponential parameters, absorbing the two Lagrange multipliers
  double coeff_k = std::numeric_limits<double>::quiet_NaN();
  double rate_alpha = std::numeric_limits<double>::quiet_NaN();
  // discretized-normal parameters
  double center = std::numeric_limits<double>::quiet_NaN();
  double spread = std::numeric_limits<double>::quiet_NaN();
};

/// Maximizes Shannon entropy over pmfs on `levels` subject to a fixed mean
/// transmit power mu. The optimum has the form p_i = k exp(-alpha x_i); alpha
/// is found by safeguarded bisection on the strictly decreasing alpha -> mean
/// map, to |mean - mu| <= 1e-10 * mu. alpha is negative when mu exceeds the
/// unweighted level mean and zero when it equals it.
///
/// Throws InfeasibleMean unless min(levels) < mu < max(levels).
PowerDistribution solve_max_entropy(const PowerLevelSet& levels, double mu_mw);

/// Equal probability on every level.
PowerDistribution make_uniform(const PowerLevelSet& levels);

/// p_i proportional to exp(-(x_i - c)^2 / (2 spread^2)) with the center c
/// solved so the pmf mean equals mu to 1e-10 * mu.
/// Throws InfeasibleMean unless min(levels) < mu < max(levels).
PowerDistribution make_discretized_normal(const PowerLevelSet& levels, double mu_mw, double spread_mw);

/// Shannon entropy in nats, with 0 log 0 taken as 0.
double entropy(std::span<const double> probs);
double entropy(const PowerDistribution& dist);

double mean_power(const PowerDistribution& dist);

struct PowerDraw {
  std::size_t index;
  double power_mw;
};

/// Inverse-CDF sample from the pmf.
PowerDraw sample_power(const PowerDistribution& dist, Rng& rng);

}  // namespace locpriv
