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

#ifndef BINCDF_NEGBINOMIAL_HPP
#define BINCDF_NEGBINOMIAL_HPP

#include "bincdf/binomial_inv.hpp"
#include "bincdf/config.hpp"

namespace bincdf {

// Parameters of a negative binomial distribution counting failures before
// the r-th success: r > 0 (real r admitted), p in (0, 1).
struct NegBinomialParams {
  double r;
  double p;
  // Throws std::domain_error when out of range.
  void validate() const;
};

// Diagnostics of the windowed exact summation.
struct NbExactCdfInfo {
  double value;       // P(X <= x)
  bool upper_branch;  // true when the survival side was summed directly
  long long terms;    // number of probability terms accumulated
};

// P(X <= x) for X ~ NegBinomial(r, p), exact windowed summation with the
// term recurrence t_{k+1} = t_k (r + k)(1 - p)/(k + 1); works for real r.
// x < 0 gives 0. Identical to I_p(r, x + 1).
double nb_cdf_exact(double r, double p, long long x);

// nb_cdf_exact plus branch diagnostics.
NbExactCdfInfo nb_cdf_exact_info(double r, double p, long long x);

// psi(xi) = -KL(xi || p) / xi, the exponent rate of the transform for the
// size-anchored deviate rho = eta / sqrt(xi). Requires xi, p in (0, 1).
// psi(p) = rho = 0 is the double root: psi <= 0 with psi(p) = 0.
double psi(double xi, double p);

// d psi / d xi = -log((1-p)/(1-xi)) / xi^2; psi_prime(p) = 0.
double psi_prime(double xi, double p);

// Solves -2 psi(xi) = rho^2 with sign(p - xi) = sign(rho): the unique xi in
// (0, 1) mapped from the deviate rho. Any rho >= 0 is attainable; throws
// std::range_error when rho <= -sqrt(-2 log p) (no solution in (0, 1)).
// Series-started bracketed Newton in chi = sign(p - xi) sqrt(-2 psi).
double solve_psi(double rho, double p,
                 const AsymptoticConfig& cfg = AsymptoticConfig{});

// Truncated series xi = p - p(1-p) sum_{k=1..k_max} r_k(p) rhot^k with
// rhot = rho / sqrt(1-p), k_max in [1, 5]. Valid for |rhot| <~ 0.5.
double xi_from_rho_series(double rho, double p, int k_max = 5);

// Truncated series p = xi + xi(1-xi) sum_{k=1..k_max} s_k(xi) rhoh^k with
// rhoh = rho / sqrt(1-xi). Term by term equal to the eta-based inverse
// expansion because rhoh coincides with eta/lambda.
double p_from_rho_series(double rho, double xi, int k_max = 5);

// Smallest integer x with P(X <= x) >= alpha for X ~ NegBinomial(r, p),
// r >= 1 (real r admitted), alpha in (0, 1]. Asymptotic inversion through
// the size-anchored deviate with one perturbation correction, then
// guaranteed integer refinement; integer bisection fallback when the
// deviate leaves the attainable range. Throws std::range_error when alpha
// is unreachable below the support cap (alpha indistinguishable from 1).
InversionResult nb_invert(double r, double p, double alpha,
                          const AsymptoticConfig& cfg = AsymptoticConfig{});

// Search cap for fallback and saturation scans: mean + 20 sigma + 50.
double nb_support_cap(double r, double p);

// Independent quantile reference: one cumulative pass over the pmf in
// extended (long double) precision, up to nb_support_cap. Throws
// std::range_error if alpha is not reached below the cap. Used by tests.
long long nb_quantile_scan_oracle(double r, double p, double alpha);

}  // namespace bincdf

#endif  // BINCDF_NEGBINOMIAL_HPP
