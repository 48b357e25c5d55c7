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
#include <vector>

#include "locpriv/channel.hpp"
#include "locpriv/parallel.hpp"
#include "locpriv/power_policy.hpp"
#include "locpriv/signal_model.hpp"

namespace locpriv {

enum class RemainderPolicy { drop, shrink };

/// Settings shared by both estimators. The gain search runs a coarse
/// log-spaced grid over [h_min, h_max] followed by golden-section refinement
/// around the best grid cell, to relative tolerance h_tolerance.
struct EstimatorConfig {
  std::size_t block_size = 4;  // frames per exhaustive-search block
  double h_min = 0.0;
  double h_max = 0.0;
  double h_tolerance = 1e-8;
  RemainderPolicy remainder = RemainderPolicy::drop;
  std::size_t grid_points = 64;
  // Two candidate power sequences whose block log-likelihoods differ by less
  // than this are treated as tied. Sequences related by a pure rescaling
  // (h, x_k) -> (c h, x_k / c) that stays inside the level set reach exactly
  // the same maximum, up to rounding in the two independent refinements;
  // the tolerance collapses such classes so the lexicographic tie-break is
  // reproducible.
  double tie_tolerance = 1e-9;
};

struct EstimationResult {
  double h_hat = std::numeric_limits<double>::quiet_NaN();
  double d_hat = std::numeric_limits<double>::quiet_NaN();
  double log_likelihood = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> per_block_h;                        // untrusted only
  std::vector<std::vector<std::size_t>> per_block_levels; // winning level indices
  std::size_t sequences_evaluated = 0;
};

/// Maximizer of the joint log-likelihood over the gain for a set with known
/// transmit powers. Throws BracketMiss if the coarse-grid maximum lands on a
/// bracket endpoint (the refined value is not returned in that case).
double maximize_over_h(const ObservationSet& obs, const ChannelParams& params,
                       const EstimatorConfig& cfg);

/// Trusted-node estimate: one joint gain maximization over all frames, then
/// the path-loss inverse map for the distance.
EstimationResult estimate_trusted(const ObservationSet& obs, const ChannelParams& params,
                                  const EstimatorConfig& cfg);

/// Untrusted-node estimate: frames are split into blocks of cfg.block_size;
/// within each block every one of the n^s candidate power sequences is scored
/// by its own gain maximization, the best (sequence, gain) pair wins with
/// near-ties broken toward the lexicographically smallest level-index
/// sequence, and the final gain is the unweighted mean of the block winners.
///
/// Block searches are independent and run in parallel under `exec`; winners
/// are reduced in block order, so results do not depend on thread count.
/// Throws BracketMiss if any block's winning gain sits on the bracket edge,
/// and EmptyBlocks if the remainder policy leaves no blocks.
EstimationResult estimate_untrusted(const ObservationSet& obs, const PowerLevelSet& levels,
                                    const ChannelParams& params, const EstimatorConfig& cfg,
                                    const ExecPolicy& exec = {});

/// Plain-loop reference for estimate_untrusted: same contract and bit-identical
/// results, no per-block grid tables and no parallelism. Kept as the
/// comparison baseline for tests and benchmarks.
EstimationResult estimate_untrusted_reference(const ObservationSet& obs, const PowerLevelSet& levels,
                                              const ChannelParams& params, const EstimatorConfig& cfg);

/// Sample standard deviation (divisor N-1) of the distance errors
/// d_hat - true_d, divided by true_d. Requires at least two estimates.
double normalized_error_std(std::span<const double> d_hats, double true_distance_m);

}  // namespace locpriv
