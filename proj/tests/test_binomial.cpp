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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bincdf/beta_asym.hpp"
#include "bincdf/binomial.hpp"
#include "bincdf/special.hpp"
#include "doctest.h"
#include "series_oracle.hpp"

namespace {

double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs((got - want) / want);
}

void check_table(const bincdf::SeriesCoefficients& got,
                 const series_oracle::Series& eps_series, double scale) {
  // Table value k is -eps_series[k] / scale for k = 1..5.
  for (int k = 1; k <= 5; ++k) {
    double want = static_cast<double>(-eps_series[k] / scale);
    CAPTURE(k);
    CHECK(std::fabs(got.values[k] - want) <=
          1e-12 * std::max(1.0, std::fabs(want)));
  }
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((bincdf::BinomialParams{0, 0.5}.validate()),
                  std::domain_error);
  CHECK_THROWS_AS((bincdf::BinomialParams{10, 0.0}.validate()),
                  std::domain_error);
  CHECK_THROWS_AS((bincdf::BinomialParams{10, 1.0}.validate()),
                  std::domain_error);
  CHECK_NOTHROW((bincdf::BinomialParams{1, 0.5}.validate()));
  CHECK_THROWS_AS(bincdf::cdf_exact(0, 0.5, 0), std::domain_error);
  CHECK_THROWS_AS(bincdf::cdf_exact(10, -0.1, 3), std::domain_error);
}

TEST_CASE("cdf_exact clamps and tiny closed forms") {
  CHECK(bincdf::cdf_exact(10, 0.3, -1) == 0.0);
  CHECK(bincdf::cdf_exact(10, 0.3, 10) == 1.0);
  CHECK(bincdf::cdf_exact(10, 0.3, 15) == 1.0);
  CHECK(rel_err(bincdf::cdf_exact(1, 0.3, 0), 0.7) <= 1e-15);
  CHECK(rel_err(bincdf::cdf_exact(2, 0.3, 1), 1.0 - 0.09) <= 1e-15);
  // P(X <= 0) = q^n with full relative precision even when tiny.
  double q40 = std::exp(40.0 * std::log1p(-0.6));
  CHECK(rel_err(bincdf::cdf_exact(40, 0.6, 0), q40) <= 1e-13);
}

TEST_CASE("cdf_exact equals the incomplete beta identity") {
  struct Case {
    long long n;
    double p;
    long long x;
  };
  const Case cases[] = {{1, 0.4, 0},    {2, 0.93, 1},   {7, 0.07, 3},
                        {50, 0.4, 20},  {50, 0.4, 1},   {50, 0.5, 25},
                        {500, 0.4, 180}, {500, 0.4, 220}, {500, 0.93, 480},
                        {1500, 0.4, 599}, {1500, 0.4, 600}};
  for (const Case& c : cases) {
    double want = bincdf::inc_beta_ref(1.0 - c.p,
                                       static_cast<double>(c.n - c.x),
                                       static_cast<double>(c.x) + 1.0);
    double got = bincdf::cdf_exact(c.n, c.p, c.x);
    CAPTURE(c.n);
    CAPTURE(c.p);
    CAPTURE(c.x);
    CHECK(rel_err(got, want) <= 1e-12);
  }
  CHECK(rel_err(bincdf::cdf_exact(50, 0.4, 20), 0.56103493204006594) <=
        1e-14);
  CHECK(rel_err(bincdf::cdf_exact(1500, 0.4, 599), 0.4901891565) <= 1e-9);
  CHECK(rel_err(bincdf::cdf_exact(1500, 0.4, 600), 0.5112115622) <= 1e-9);
}

TEST_CASE("cdf_exact and sf_exact are complementary") {
  const long long ns[] = {3, 50, 777};
  for (long long n : ns) {
    for (double p : {0.07, 0.4, 0.93}) {
      for (long long x : {0LL, n / 3, n / 2, n - 1}) {
        double s = bincdf::cdf_exact(n, p, x) + bincdf::sf_exact(n, p, x);
        CAPTURE(n);
        CAPTURE(p);
        CAPTURE(x);
        CHECK(std::fabs(s - 1.0) <= 2e-16);
      }
    }
  }
}

TEST_CASE("windowed summation picks the short branch") {
  bincdf::ExactCdfInfo low = bincdf::cdf_exact_info(1000, 0.5, 100);
  CHECK_FALSE(low.upper_branch);
  CHECK(low.terms <= 101);
  bincdf::ExactCdfInfo high = bincdf::cdf_exact_info(1000, 0.5, 900);
  CHECK(high.upper_branch);
  CHECK(high.terms <= 100);
  // Central case: both windows stop once terms fall below the cutoff, so
  // the count stays far below n.
  bincdf::ExactCdfInfo mid = bincdf::cdf_exact_info(1000000, 0.5, 500000);
  CHECK(mid.terms < 6000);
  CHECK(rel_err(mid.value + bincdf::cdf_exact(1000000, 0.5, 499999), 1.0) <=
        1e-12);
}

TEST_CASE("cdf methods agree and validate their domains") {
  // automatic == exact for integral x.
  CHECK(bincdf::cdf(50, 0.4, 20.0) == bincdf::cdf_exact(50, 0.4, 20));
  // beta_ref for real x interpolates between neighbors.
  double lo = bincdf::cdf(50, 0.4, 19.0, bincdf::CdfMethod::beta_ref);
  double mid = bincdf::cdf(50, 0.4, 19.5, bincdf::CdfMethod::beta_ref);
  double hi = bincdf::cdf(50, 0.4, 20.0, bincdf::CdfMethod::beta_ref);
  CHECK(lo < mid);
  CHECK(mid < hi);
  // The beta_ref path at integral x matches the exact sum.
  CHECK(rel_err(hi, bincdf::cdf_exact(50, 0.4, 20)) <= 1e-12);
  // The asymptotic path is close at large n.
  double asym = bincdf::cdf(1500, 0.4, 599.5, bincdf::CdfMethod::beta_asym);
  double ref = bincdf::cdf(1500, 0.4, 599.5, bincdf::CdfMethod::beta_ref);
  CHECK(std::fabs(asym - ref) <= 1e-6);
  // Real x clamps.
  CHECK(bincdf::cdf(50, 0.4, -1.0, bincdf::CdfMethod::beta_ref) == 0.0);
  CHECK(bincdf::cdf(50, 0.4, 50.0, bincdf::CdfMethod::beta_ref) == 1.0);
  CHECK_THROWS_AS(bincdf::cdf(50, 0.4, 19.5, bincdf::CdfMethod::exact),
                  std::domain_error);
}

TEST_CASE("eta_binomial and xi_from_eta invert each other") {
  for (double p : {0.1, 0.4, 0.5, 0.9}) {
    double eta_min = -std::sqrt(-2.0 * std::log(p));
    double eta_max = std::sqrt(-2.0 * std::log1p(-p));
    for (double frac : {-0.8, -0.4, -0.05, 0.05, 0.4, 0.8}) {
      double eta = frac < 0.0 ? -frac * eta_min : frac * eta_max;
      double xi = bincdf::xi_from_eta(eta, p);
      CAPTURE(p);
      CAPTURE(eta);
      CHECK(xi > 0.0);
      CHECK(xi < 1.0);
      double back = bincdf::eta_binomial(p, xi);
      CHECK(std::fabs(back - eta) <= 1e-12 * std::max(1.0, std::fabs(eta)));
    }
    CHECK(bincdf::xi_from_eta(0.0, p) == p);
    // Outside the attainable interval the solve must refuse.
    CHECK_THROWS_AS(bincdf::xi_from_eta(1.01 * eta_max, p),
                    std::range_error);
    CHECK_THROWS_AS(bincdf::xi_from_eta(1.01 * eta_min, p),
                    std::range_error);
  }
  // eta decreases in xi through zero at p.
  CHECK(bincdf::eta_binomial(0.4, 0.3) > 0.0);
  CHECK(bincdf::eta_binomial(0.4, 0.4) == 0.0);
  CHECK(bincdf::eta_binomial(0.4, 0.5) < 0.0);
}

TEST_CASE("xi_from_eta_series approximates the solver near zero") {
  for (double p : {0.2, 0.4, 0.7}) {
    double mu = std::sqrt(p * (1.0 - p));
    double eta = 0.05 * mu;
    double series = bincdf::xi_from_eta_series(eta, p, 5);
    double solved = bincdf::xi_from_eta(eta, p);
    CAPTURE(p);
    CHECK(std::fabs(series - solved) <= 1e-8);
    // More terms get closer.
    double series2 = bincdf::xi_from_eta_series(0.2 * mu, p, 2);
    double series5 = bincdf::xi_from_eta_series(0.2 * mu, p, 5);
    double full = bincdf::xi_from_eta(0.2 * mu, p);
    CHECK(std::fabs(series5 - full) < std::fabs(series2 - full));
  }
  CHECK_THROWS_AS(bincdf::xi_from_eta_series(0.1, 0.4, 0), std::domain_error);
  CHECK_THROWS_AS(bincdf::xi_from_eta_series(0.1, 0.4, 6), std::domain_error);
}

TEST_CASE("p_from_eta_series inverts the anchored expansion") {
  for (double p : {0.25, 0.5, 0.65}) {
    double mu = std::sqrt(p * (1.0 - p));
    double eta = 0.04 * mu;
    double xi = bincdf::xi_from_eta(eta, p);
    double back = bincdf::p_from_eta_series(eta, xi, 5);
    CAPTURE(p);
    CHECK(std::fabs(back - p) <= 1e-9);
  }
}

TEST_CASE("f_eta matches the anchored density ratio") {
  for (double xi : {0.25, 0.5, 0.7}) {
    for (double eta : {-0.35, -0.05, 0.05, 0.35}) {
      double p = bincdf::x_from_eta(eta, xi);
      double got = bincdf::f_eta(eta, xi, p);
      double want = bincdf::f_of_zeta(eta, xi);
      CAPTURE(xi);
      CAPTURE(eta);
      CHECK(std::fabs(got - want) <= 1e-11);
    }
  }
  CHECK(bincdf::f_eta(0.0, 0.3, 0.4) == 1.0);
  CHECK_THROWS_AS(bincdf::f_eta(0.3, 0.3, 0.2), std::domain_error);
  CHECK_THROWS_AS(bincdf::f_eta(-0.3, 0.3, 0.4), std::domain_error);
}

TEST_CASE("pinned coefficient tables match the long double reversion") {
  const double anchors[] = {0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9};
  const int order = 8;
  for (double t : anchors) {
    long double tl = static_cast<long double>(t);
    long double pq = tl * (1.0L - tl);
    CAPTURE(t);

    // xi as a series in the p-anchored deviate.
    check_table(
        bincdf::series_coefficients(bincdf::SeriesKind::xi_of_eta, t),
        series_oracle::eps_of_eta_tilde(tl, order), static_cast<double>(pq));

    // xi as a series in the size-anchored deviate.
    check_table(
        bincdf::series_coefficients(bincdf::SeriesKind::xi_of_rho, t),
        series_oracle::eps_of_rho_tilde(tl, order), static_cast<double>(pq));

    // p as a series in the xi-anchored deviate (two scaled variables that
    // coincide, so both kinds must equal the same reversion).
    series_oracle::Series u = series_oracle::u_of_eta_hat(tl, order);
    for (bincdf::SeriesKind kind :
         {bincdf::SeriesKind::p_of_eta, bincdf::SeriesKind::p_of_rho}) {
      bincdf::SeriesCoefficients tab = bincdf::series_coefficients(kind, t);
      for (int k = 1; k <= 5; ++k) {
        double want = static_cast<double>(u[k]);
        CAPTURE(k);
        CHECK(std::fabs(tab.values[k] - want) <=
              1e-12 * std::max(1.0, std::fabs(want)));
      }
    }

    // Density ratio coefficients.
    series_oracle::Series f = series_oracle::f_of_eta_hat(tl, order);
    bincdf::SeriesCoefficients ctab =
        bincdf::series_coefficients(bincdf::SeriesKind::f_of_eta, t);
    for (int k = 0; k <= 4; ++k) {
      double want = static_cast<double>(f[k]);
      CAPTURE(k);
      CHECK(std::fabs(ctab.values[k] - want) <=
            1e-12 * std::max(1.0, std::fabs(want)));
    }
  }
  CHECK_THROWS_AS(
      bincdf::series_coefficients(bincdf::SeriesKind::xi_of_eta, 0.0),
      std::domain_error);
}

TEST_CASE("deviate series matches the transcendental deviate locally") {
  // eta(xi) near xi = p from the first-argument Taylor factors.
  double p = 0.37;
  double eps = 0.01;
  series_oracle::Series et = series_oracle::eta_tilde_of_eps(0.37L, 10);
  long double acc = 0.0L;
  for (int k = 10; k >= 1; --k) acc = (acc + et[k]) * eps;
  double eta_series =
      static_cast<double>(acc) * std::sqrt(p * (1.0 - p));
  double eta_direct = bincdf::eta_binomial(p, p + eps);
  CHECK(std::fabs(eta_series - eta_direct) <= 1e-10);
}
