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

#include "locpriv/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace locpriv {

void validate(const ChannelParams& params) {
  if (!(params.sigma2 > 0.0)) throw std::domain_error("sigma2 must be > 0");
  if (!(params.path_loss_ref_gain > 0.0)) throw std::domain_error("path_loss_ref_gain must be > 0");
  if (!(params.path_loss_exponent > 0.0)) throw std::domain_error("path_loss_exponent must be > 0");
  if (!(params.ref_distance > 0.0)) throw std::domain_error("ref_distance must be > 0");
}

double gain_from_distance(double distance_m, const ChannelParams& params) {
  if (!(distance_m > 0.0)) throw std::domain_error("distance must be > 0");
  return params.path_loss_ref_gain *
         std::pow(params.ref_distance / distance_m, params.path_loss_exponent);
}

double distance_from_gain(double gain, const ChannelParams& params) {
  if (!(gain > 0.0)) throw std::domain_error("gain must be > 0");
  return params.ref_distance *
         std::pow(params.path_loss_ref_gain / gain, 1.0 / params.path_loss_exponent);
}

}  // namespace locpriv
