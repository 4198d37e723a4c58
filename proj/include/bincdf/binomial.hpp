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

#ifndef BINCDF_BINOMIAL_HPP
#define BINCDF_BINOMIAL_HPP

#include <vector>

#include "bincdf/config.hpp"

namespace bincdf {

// Parameters of a binomial distribution: number of trials n >= 1 and
// success probability p in (0, 1).
struct BinomialParams {
  long long n;
  double p;
  // Throws std::domain_error when out of range.
  void validate() const;
};

// Evaluation path selector for cdf().
enum class CdfMethod {
  automatic,  // exact windowed sum for integer x, beta reference otherwise
  exact,      // windowed sum; requires integer x
  beta_ref,   // continued-fraction incomplete beta; real x allowed
  beta_asym,  // uniform asymptotic incomplete beta; real x allowed
};

// Diagnostics of the windowed exact summation.
struct ExactCdfInfo {
  double value;       // P(X <= x)
  bool upper_branch;  // true when the survival side was summed directly
  int terms;          // number of probability terms accumulated
};

// P(X <= x) for X ~ Binomial(n, p), exact windowed summation. The branch
// with the smaller result is summed directly (term recurrence seeded from a
// cancellation-free central term), so both tails keep full relative
// precision. x is clamped: x < 0 gives 0 and x >= n gives 1.
double cdf_exact(long long n, double p, long long x);

// P(X > x), branch consistent with cdf_exact: the pair sums to 1 with at
// most one rounding.
double sf_exact(long long n, double p, long long x);

// cdf_exact plus branch diagnostics.
ExactCdfInfo cdf_exact_info(long long n, double p, long long x);

// P(X <= x) through a selectable path. The beta paths accept real x in
// (-1, n) via P = I_{1-p}(n - x, x + 1); automatic picks the exact sum for
// integral x and the beta reference otherwise.
double cdf(long long n, double p, double x,
           CdfMethod method = CdfMethod::automatic,
           const AsymptoticConfig& cfg = AsymptoticConfig{});

// eta(xi) at anchor p: sign(p - xi) sqrt(2 KL(xi || p)). Decreasing in xi;
// range (-sqrt(-2 log p), sqrt(-2 log(1-p))).
double eta_binomial(double p, double xi);

// Inverse of eta_binomial in xi: the unique xi in (0, 1) with
// eta_binomial(p, xi) = eta. Throws std::range_error when eta lies outside
// the attainable open interval. Series-started bracketed Newton; residual
// |eta(xi) - eta| <= newton_tol * max(1, |eta|).
double xi_from_eta(double eta, double p,
                   const AsymptoticConfig& cfg = AsymptoticConfig{});

// Truncated series xi = p - p(1-p) sum_{k=1..k_max} a_k(p) etat^k with
// etat = eta / sqrt(p(1-p)), k_max in [1, 5]. Valid for |etat| <~ 0.5.
double xi_from_eta_series(double eta, double p, int k_max = 5);

// Truncated series p = xi + xi(1-xi) sum_{k=1..k_max} b_k(xi) etah^k with
// etah = eta / sqrt(xi(1-xi)), k_max in [1, 5]. Inverse expansion of the
// same transform anchored at xi.
double p_from_eta_series(double eta, double xi, int k_max = 5);

// Density ratio f = eta lambda / (p - xi) for the (eta, xi, p) triple
// produced by the transform; series in eta/lambda inside
// taylor_switch_radius. Requires sign(p - xi) = sign(eta) (or eta = 0).
double f_eta(double eta, double xi, double p,
             const AsymptoticConfig& cfg = AsymptoticConfig{});

// Families of pinned closed-form expansion coefficients.
enum class SeriesKind {
  xi_of_eta,  // a_k(p):  xi = p - p(1-p) sum a_k etat^k,  etat = eta/sqrt(p(1-p))
  p_of_eta,   // b_k(xi): p = xi + xi(1-xi) sum b_k etah^k, etah = eta/lambda
  f_of_eta,   // c_k(xi): f = sum c_k etah^k
  xi_of_rho,  // r_k(p):  xi = p - p(1-p) sum r_k rhot^k,  rhot = rho/sqrt(1-p)
  p_of_rho,   // s_k(xi): p = xi + xi(1-xi) sum s_k rhoh^k, rhoh = rho/sqrt(1-xi)
};

struct SeriesCoefficients {
  SeriesKind kind;
  double anchor;               // p for *_of anchored at p, xi otherwise
  std::vector<double> values;  // index = power; values[0] unused except f_of_eta
};

// Closed-form coefficient tables. For f_of_eta the vector holds c_0..c_4;
// for the other kinds it holds 0, k_1..k_5 (index = series power).
SeriesCoefficients series_coefficients(SeriesKind kind, double anchor);

}  // namespace bincdf

#endif  // BINCDF_BINOMIAL_HPP
