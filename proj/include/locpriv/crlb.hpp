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
#include <span>
#include <vector>

#include "locpriv/parallel.hpp"
#include "locpriv/power_policy.hpp"

namespace locpriv {

// Per-sample second derivatives of the received-power log-density
// log f(z | h, x) with respect to the gain h and transmit power x. With
// u = sqrt(z h x) / sigma2 and r = I1(u)/I0(u):
//
//   d2/dh2   = z x / (4 h sigma2^2) * (1 - r^2 - 2 r / u)
//   d2/dx2   = z h / (4 x sigma2^2) * (1 - r^2 - 2 r / u)
//   d2/dhdx  = (z (1 - r^2) - 2 sigma2) / (4 sigma2^2)
//
// All three are finite for every z >= 0 (r/u -> 1/2 as u -> 0). The mixed
// derivative is one shared code path for both parameter orders.
double d2_loglik_dh2(double z_mw, double gain, double x_mw, double sigma2);
double d2_loglik_dhdx(double z_mw, double gain, double x_mw, double sigma2);
double d2_loglik_dx2(double z_mw, double gain, double x_mw, double sigma2);

/// Which parameters the receiving node must estimate: a trusted node knows
/// the transmit powers, so only the gain is unknown (1x1 information); an
/// untrusted node estimates the gain and all m powers ((m+1) x (m+1)).
enum class NodeView { trusted, untrusted };

const char* to_string(NodeView view);

struct FisherConfig {
  double gain = 0.0;
  std::vector<double> powers_mw;  // the true transmit power sequence
  double sigma2 = 0.0;
  std::size_t mc_samples = 20000;  // draws per frame for each expectation
  std::uint64_t seed = 0;
};

/// Fisher information matrix in arrow form: dense first row/column plus the
/// diagonal; every other entry is structurally zero because distinct frames'
/// powers never interact in the log-likelihood. The trusted view keeps only
/// the gain-gain entry. Each entry carries the Monte Carlo standard error of
/// its expectation estimate.
struct FisherMatrix {
  double h_h = 0.0;
  double h_h_stderr = 0.0;
  std::vector<double> h_x, h_x_stderr;
  std::vector<double> x_x, x_x_stderr;

  std::size_t dimension() const { return 1 + h_x.size(); }
  /// Materializes the full symmetric matrix, zeros included.
  std::vector<std::vector<double>> dense() const;
};

/// Estimates each entry as -(Monte Carlo mean over z ~ f(. | h, x_k) of the
/// per-sample second derivative), with a per-frame deterministic generator
/// derived from cfg.seed. Frames are processed in parallel under `exec`;
/// entries land in per-frame slots, so results are thread-count invariant.
///
/// Note: in exact expectation the (h, x_k) 2x2 block of a single frame is
/// rank one -- the density depends on h and x_k only through their product --
/// so the untrusted matrix for one fixed sequence is singular up to Monte
/// Carlo noise and its inverse is not meaningful. Finite untrusted bounds
/// come from averaging matrices over random power sequences (crlb_curve).
FisherMatrix fisher_matrix(const FisherConfig& cfg, NodeView view, const ExecPolicy& exec = {});

/// [F^-1]_(1,1) via the arrow structure's Schur complement,
///   (F_hh - sum_k F_hx_k^2 / F_x_k x_k)^-1,
/// O(m) instead of a dense O(m^3) inversion. Throws SingularFisher when a
/// power diagonal entry is not positive (<= 1e-14 * F_hh) or the Schur
/// complement is <= 0; the bound is unbounded or undefined at that point.
double crlb_gain_variance(const FisherMatrix& fisher);

struct CrlbCurveRow {
  NodeView view;
  std::size_t m;
  double crlb;         // bound from the trial-averaged information matrix
  double crlb_stderr;  // jackknife standard error over trials
  std::size_t trials;
};

/// For each frame count m: draws `trials` random power sequences from the
/// policy, estimates the Fisher matrix for each, averages the matrices
/// entry-wise, and inverts the average once per view. Rows come out ordered
/// (trusted then untrusted, m ascending within each view).
std::vector<CrlbCurveRow> crlb_curve(const PowerDistribution& policy, double gain, double sigma2,
                                     std::span<const std::size_t> m_values, std::size_t trials,
                                     std::size_t mc_samples, std::uint64_t seed,
                                     const ExecPolicy& exec = {});

}  // namespace locpriv
