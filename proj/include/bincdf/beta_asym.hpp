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

#ifndef BINCDF_BETA_ASYM_HPP
#define BINCDF_BETA_ASYM_HPP

#include <array>
#include <vector>

#include "bincdf/config.hpp"

namespace bincdf {

// Components of the normal-deviate change of variables for I_x(a, b):
//   nu = a + b, xi = a / nu, lambda = sqrt(xi (1 - xi)),
//   eta = sign(x - xi) sqrt(2 KL(xi || x)).
struct EtaTransform {
  double nu;
  double xi;
  double lambda;
  double eta;
};

// Builds the transform for the point x of I_x(a, b). Requires a, b > 0 and
// x in (0, 1).
EtaTransform make_eta_transform(double x, double a, double b);

// eta(x) at fixed xi: sign(x - xi) sqrt(2 KL(xi || x)). Monotone increasing
// bijection from (0, 1) onto the real line. Requires x, xi in (0, 1).
double eta_from_x(double x, double xi);

// Inverse of eta_from_x: the unique x in (0, 1) with eta(x) = eta. Any real
// eta is admissible. Bracketed Newton with a series start; the residual in
// eta satisfies |eta(x) - eta| <= newton_tol * max(1, |eta|).
double x_from_eta(double eta, double xi,
                  const AsymptoticConfig& cfg = AsymptoticConfig{});

// f(zeta) = zeta lambda / (x(zeta) - xi), the analytic density ratio of the
// change of variables; f(0) = 1. Uses the Taylor series in zeta / lambda
// inside taylor_switch_radius and the direct formula outside.
double f_of_zeta(double zeta, double xi,
                 const AsymptoticConfig& cfg = AsymptoticConfig{});

// Taylor coefficients of f in powers of zeta_hat = zeta / lambda, returned
// up to the requested order (inclusive). Built at runtime by reversion of
// the eta(x) power series; coefficient 0 is always 1.
std::vector<double> f_zeta_taylor(double xi, int order);

// Closed forms of the first five Taylor coefficients of f in zeta / lambda.
std::array<double, 5> f_zeta_closed_coeffs(double xi);

// Exact normalization factor F_nu(infinity) = G*(a) G*(b) / G*(a + b) where
// G* is the scaled gamma function.
double f_nu_infinity(double a, double b);

// Diagnostic truncated series F_nu(infinity) ~ sum_{k<k_terms} F_k(xi)/nu^k,
// k_terms in [1, 4]. The exact ratio above is what computations use.
double f_nu_infinity_series(double a, double b, int k_terms);

// Closed forms F_0 .. F_3 of the normalization series coefficients.
std::array<double, 4> fk_table(double xi);

// Correction coefficients C_0(eta) .. C_{k_max}(eta) of the tail expansion
//   R_nu(eta) = pref * sum_k C_k(eta) / nu^k.
// C_0 uses the exact formula (f(eta) - 1) / eta outside the series radius.
// C_k for k >= 1 are power series in eta; when |eta / lambda| exceeds
// taylor_switch_radius and k_max >= 1, *series_warning (if given) is set
// because those series are evaluated outside their trusted radius.
std::vector<double> ck_coefficients(double eta, double xi, int k_max,
                                    const AsymptoticConfig& cfg =
                                        AsymptoticConfig{},
                                    bool* series_warning = nullptr);

// Uniform asymptotic evaluation of I_x(a, b):
//   I = erfc(-eta sqrt(nu/2)) / 2 - R_nu(eta),
//   R_nu(eta) = [exp(-nu eta^2 / 2) / (sqrt(2 pi nu) F_nu(inf))]
//               * sum_k C_k(eta) / nu^k.
// Intended for nu = a + b >= ~500; absolute error <= 1e-6 for nu >= 1000
// with xi, x in [0.1, 0.9], improving like 1/nu^2. If strip_warning is
// given it is set when xi falls outside [delta, 1 - delta].
double inc_beta_asym(double x, double a, double b,
                     const AsymptoticConfig& cfg = AsymptoticConfig{},
                     bool* strip_warning = nullptr);

}  // namespace bincdf

#endif  // BINCDF_BETA_ASYM_HPP
