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

/// log(I0(a)) for a >= 0, where I0 is the modified Bessel function of the
/// first kind, order zero.
///
/// Evaluated in the log domain throughout: the power series of I0 is summed
/// directly for a <= 30 and the large-argument expansion
/// I0(a) ~ e^a / sqrt(2 pi a) * (1 + 1/(8a) + 9/(128 a^2) + ...) is used
/// above, so the result never overflows even though I0 itself exceeds the
/// double range near a ~ 710. Relative accuracy is ~1e-14 on both branches.
///
/// Throws std::domain_error for a < 0.
double log_bessel_i0(double a);

/// I1(a) / I0(a) for a >= 0. Monotone increasing from 0 toward 1.
double bessel_ratio_i1_i0(double a);

/// (I1(a) / I0(a)) / a, continuously extended to 1/2 at a = 0. The second
/// derivatives of the received-power log-likelihood need this combination at
/// z = 0, where forming the ratio and dividing would lose the limit.
double bessel_ratio_i1_i0_over_a(double a);

}  // namespace locpriv
