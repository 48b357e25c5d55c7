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

namespace locpriv {

// All internal computation is in linear milliwatts; dBm appears only at the
// configuration boundary.

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

/// Noise variance per dimension such that h * mu / (2 * sigma2) equals the
/// requested average SNR.
inline double sigma2_for_average_snr_db(double snr_db, double gain, double mean_power_mw) {
  return gain * mean_power_mw / (2.0 * std::pow(10.0, snr_db / 10.0));
}

}  // namespace locpriv
