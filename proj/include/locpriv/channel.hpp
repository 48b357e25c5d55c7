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

namespace locpriv {

/// Channel description for the line-of-sight received-power model: AWGN with
/// variance sigma2 per quadrature component (2*sigma2 total), plus a
/// log-distance path-loss map between channel gain and distance,
///   h(d) = path_loss_ref_gain * (ref_distance / d)^path_loss_exponent.
struct ChannelParams {
  double sigma2 = 1.0;             // noise variance per dimension, mW
  double path_loss_ref_gain = 1.0; // gain at the reference distance
  double path_loss_exponent = 2.0;
  double ref_distance = 1.0;       // meters

  ChannelParams with_sigma2(double s2) const {
    ChannelParams out = *this;
    out.sigma2 = s2;
    return out;
  }
};

/// Validates positivity of every field; throws std::domain_error otherwise.
void validate(const ChannelParams& params);

/// h(d); strictly decreasing in d. Throws std::domain_error for d <= 0.
double gain_from_distance(double distance_m, const ChannelParams& params);

/// Inverse of gain_from_distance. Throws std::domain_error for h <= 0.
double distance_from_gain(double gain, const ChannelParams& params);

}  // namespace locpriv
