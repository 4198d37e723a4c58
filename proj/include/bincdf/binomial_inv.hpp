// Copyright 2026 The bincdf Authors
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

#ifndef BINCDF_BINOMIAL_INV_HPP
#define BINCDF_BINOMIAL_INV_HPP

#include <array>

#include "bincdf/config.hpp"

namespace bincdf {

// Outcome of a quantile inversion. x_int is the smallest integer whose CDF
// reaches alpha; x_real is the real-valued asymptotic solution before
// rounding. On the asymptotic path the intermediate transform values are
// recorded; on the bisection fallback they are NaN and x_real equals x_int.
struct InversionResult {
  double x_real;
  long long x_int;
  double achieved_cdf;   // CDF at x_int
  double eta0;           // leading normal deviate
  double eta1;           // first perturbation coefficient
  double xi0;            // transform solution at eta0
  double xi;             // transform solution at the corrected eta
  int refinement_steps;  // number of integer CDF probes spent
  bool fallback_used;
};

// Perturbation coefficient eta1 = log f(eta0) / eta0 at anchor (xi0, p),
// evaluated through log1p of the series of f - 1 for |eta0| below
// eta1_series_switch and directly otherwise. Requires the orientation
// sign(p - xi0) = sign(eta0) when eta0 is nonzero.
double eta1_correction(double eta0, double xi0, double p,
                       const AsymptoticConfig& cfg = AsymptoticConfig{});

// Closed-form coefficients t_0..t_3 of the small-eta0 expansion
//   eta1(eta0) = t_0 + t_1 eta0 + t_2 eta0^2 + t_3 eta0^3 + O(eta0^4)
// at a given xi. Pinned values cross-checked against the runtime log-series.
std::array<double, 4> eta1_series_coeffs(double xi);

// Smallest integer x with P(X <= x) >= alpha for X ~ Binomial(n, p).
// Asymptotic inversion (normal deviate, transform solve, one perturbation
// correction) followed by guaranteed integer refinement; falls back to
// integer bisection when the deviate leaves the attainable transform range.
// alpha in (0, 1]; alpha = 1 returns n. Postconditions:
//   achieved_cdf >= alpha and (x_int == 0 or cdf(x_int - 1) < alpha).
InversionResult invert(long long n, double p, double alpha,
                       const AsymptoticConfig& cfg = AsymptoticConfig{});

// Independent quantile reference: one cumulative pass over the pmf in
// extended (long double) precision. O(n) time; used by tests.
long long quantile_scan_oracle(long long n, double p, double alpha);

}  // namespace bincdf

#endif  // BINCDF_BINOMIAL_INV_HPP
