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

#include "bincdf/binomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bincdf/beta_asym.hpp"
#include "bincdf/special.hpp"

namespace bincdf {
namespace {

constexpr double kTermCut = 1e-18;

void check_p(double p, const char* who) {
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream os;
    os << who << ": p=" << p << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
}

struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// Binomial probability term C(n,k) p^k (1-p)^{n-k} through the beta density
// identity; keeps full relative precision for any n, k.
double binom_term(long long n, double p, long long k) {
  double a = static_cast<double>(k) + 1.0;
  double b = static_cast<double>(n - k) + 1.0;
  return beta_front_factor(p, a, b) /
         (static_cast<double>(n + 1) * p * (1.0 - p));
}

}  // namespace

void BinomialParams::validate() const {
  if (n < 1) {
    std::ostringstream os;
    os << "BinomialParams: n=" << n << " must be at least 1";
    throw std::domain_error(os.str());
  }
  check_p(p, "BinomialParams");
}

ExactCdfInfo cdf_exact_info(long long n, double p, long long x) {
  BinomialParams{n, p}.validate();
  if (x < 0) return {0.0, false, 0};
  if (x >= n) return {1.0, false, 0};
  // Most probable term index; summing on the side of x that moves away from
  // it keeps every window short.
  long long mode = static_cast<long long>(
      std::floor((static_cast<double>(n) + 1.0) * p));
  double ratio_down = (1.0 - p) / p;
  double ratio_up = p / (1.0 - p);
  if (x < mode) {
    KahanSum acc;
    double t = binom_term(n, p, x);
    acc.add(t);
    int terms = 1;
    for (long long k = x; k > 0; --k) {
      t *= static_cast<double>(k) / static_cast<double>(n - k + 1) *
           ratio_down;
      acc.add(t);
      ++terms;
      if (t < kTermCut * acc.s) break;
    }
    return {acc.s, false, terms};
  }
  KahanSum acc;
  double t = binom_term(n, p, x + 1);
  acc.add(t);
  int terms = 1;
  for (long long k = x + 1; k < n; ++k) {
    t *= static_cast<double>(n - k) / static_cast<double>(k + 1) * ratio_up;
    acc.add(t);
    ++terms;
    if (t < kTermCut * acc.s) break;
  }
  return {1.0 - acc.s, true, terms};
}

double cdf_exact(long long n, double p, long long x) {
  return cdf_exact_info(n, p, x).value;
}

double sf_exact(long long n, double p, long long x) {
  ExactCdfInfo info = cdf_exact_info(n, p, x);
  // The directly summed side is returned unrounded; its complement carries
  // one subtraction. P(X <= x) + P(X > x) = 1 to one rounding either way.
  return 1.0 - info.value;
}

double cdf(long long n, double p, double x, CdfMethod method,
           const AsymptoticConfig& cfg) {
  BinomialParams{n, p}.validate();
  bool integral = std::isfinite(x) && std::floor(x) == x &&
                  std::fabs(x) < 9.0e18;
  if (method == CdfMethod::automatic) {
    method = integral ? CdfMethod::exact : CdfMethod::beta_ref;
  }
  if (method == CdfMethod::exact) {
    if (!integral) {
      std::ostringstream os;
      os << "cdf: exact method requires integer x, got " << x;
      throw std::domain_error(os.str());
    }
    return cdf_exact(n, p, static_cast<long long>(x));
  }
  if (x <= -1.0) return 0.0;
  if (x >= static_cast<double>(n)) return 1.0;
  double a = static_cast<double>(n) - x;
  double b = x + 1.0;
  if (method == CdfMethod::beta_ref) {
    return inc_beta_ref(1.0 - p, a, b);
  }
  return inc_beta_asym(1.0 - p, a, b, cfg);
}

double eta_binomial(double p, double xi) {
  check_p(p, "eta_binomial");
  if (!(xi > 0.0) || !(xi < 1.0)) {
    std::ostringstream os;
    os << "eta_binomial: xi=" << xi << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  double mag = std::sqrt(2.0 * kl_bernoulli(xi, p));
  return p >= xi ? mag : -mag;
}

double xi_from_eta(double eta, double p, const AsymptoticConfig& cfg) {
  check_p(p, "xi_from_eta");
  cfg.validate();
  if (eta == 0.0) return p;
  double eta_min = -std::sqrt(-2.0 * std::log(p));
  double eta_max = std::sqrt(-2.0 * std::log1p(-p));
  if (!(eta > eta_min) || !(eta < eta_max)) {
    std::ostringstream os;
    os << "xi_from_eta: eta=" << eta << " outside the attainable interval ("
       << eta_min << ", " << eta_max << ") for p=" << p;
    throw std::range_error(os.str());
  }
  double mu2 = p * (1.0 - p);
  double mu = std::sqrt(mu2);
  // eta(xi) decreases from eta_max at 0 to eta_min at 1, crossing 0 at p.
  double lo = eta > 0.0 ? 0.0 : p;
  double hi = eta > 0.0 ? p : 1.0;
  double xi;
  if (std::fabs(eta / mu) <= cfg.series_radius_guard) {
    xi = xi_from_eta_series(eta, p, 5);
  } else {
    xi = 0.5 * (lo + hi);
  }
  if (!(xi > lo) || !(xi < hi)) xi = 0.5 * (lo + hi);

  double tol = cfg.newton_tol * std::max(1.0, std::fabs(eta));
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    double phi = eta_binomial(p, xi);
    double res = phi - eta;
    if (res > 0.0) {
      lo = xi;
    } else if (res < 0.0) {
      hi = xi;
    }
    if (std::fabs(res) <= tol) return xi;
    // phi'(xi) = log(xi(1-p) / (p(1-xi))) / phi; limit -1/mu at xi = p.
    double dphi;
    if (std::fabs(phi) < 1e-12) {
      dphi = -1.0 / mu;
    } else {
      double g = std::log1p((xi - p) / p) - std::log1p((p - xi) / (1.0 - p));
      dphi = g / phi;
    }
    double step = res / dphi;
    double xn = xi - step;
    if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
    if (xn == xi) return xi;
    xi = xn;
  }
  return xi;
}

double xi_from_eta_series(double eta, double p, int k_max) {
  check_p(p, "xi_from_eta_series");
  if (k_max < 1 || k_max > 5) {
    std::ostringstream os;
    os << "xi_from_eta_series: k_max=" << k_max << " outside [1, 5]";
    throw std::domain_error(os.str());
  }
  SeriesCoefficients tab = series_coefficients(SeriesKind::xi_of_eta, p);
  double mu2 = p * (1.0 - p);
  double etat = eta / std::sqrt(mu2);
  double acc = 0.0;
  for (int k = k_max; k >= 1; --k) acc = (acc + tab.values[k]) * etat;
  return p - mu2 * acc;
}

double p_from_eta_series(double eta, double xi, int k_max) {
  if (!(xi > 0.0) || !(xi < 1.0)) {
    std::ostringstream os;
    os << "p_from_eta_series: xi=" << xi << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  if (k_max < 1 || k_max > 5) {
    std::ostringstream os;
    os << "p_from_eta_series: k_max=" << k_max << " outside [1, 5]";
    throw std::domain_error(os.str());
  }
  SeriesCoefficients tab = series_coefficients(SeriesKind::p_of_eta, xi);
  double lam2 = xi * (1.0 - xi);
  double etah = eta / std::sqrt(lam2);
  double acc = 0.0;
  for (int k = k_max; k >= 1; --k) acc = (acc + tab.values[k]) * etah;
  return xi + lam2 * acc;
}

double f_eta(double eta, double xi, double p, const AsymptoticConfig& cfg) {
  if (!(xi > 0.0) || !(xi < 1.0)) {
    std::ostringstream os;
    os << "f_eta: xi=" << xi << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  check_p(p, "f_eta");
  cfg.validate();
  if (eta == 0.0) return 1.0;
  if ((eta > 0.0) != (p > xi) || p == xi) {
    std::ostringstream os;
    os << "f_eta: inconsistent orientation, sign(p - xi) must match "
          "sign(eta); got eta="
       << eta << ", xi=" << xi << ", p=" << p;
    throw std::domain_error(os.str());
  }
  double lam = std::sqrt(xi * (1.0 - xi));
  if (std::fabs(eta / lam) <= cfg.taylor_switch_radius) {
    return f_of_zeta(eta, xi, cfg);
  }
  return eta * lam / (p - xi);
}

SeriesCoefficients series_coefficients(SeriesKind kind, double anchor) {
  if (!(anchor > 0.0) || !(anchor < 1.0)) {
    std::ostringstream os;
    os << "series_coefficients: anchor=" << anchor << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  SeriesCoefficients out;
  out.kind = kind;
  out.anchor = anchor;
  double t = anchor;
  double t2 = t * t;
  double t3 = t2 * t;
  double t4 = t2 * t2;
  switch (kind) {
    case SeriesKind::xi_of_eta:
      out.values = {0.0,
                    1.0,
                    (2.0 * t - 1.0) / 6.0,
                    (2.0 * t2 - 2.0 * t - 1.0) / 72.0,
                    -(2.0 * t3 - 3.0 * t2 - 3.0 * t + 2.0) / 540.0,
                    (4.0 * t4 - 8.0 * t3 - 48.0 * t2 + 52.0 * t - 23.0) /
                        17280.0};
      break;
    case SeriesKind::p_of_eta:
    case SeriesKind::p_of_rho:
      // The two inverse expansions coincide term by term because their
      // scaled variables are identical: rho/sqrt(1-xi) = eta/lambda.
      out.values = {0.0,
                    1.0,
                    (1.0 - 2.0 * t) / 3.0,
                    (13.0 * t2 - 13.0 * t + 1.0) / 36.0,
                    -(2.0 * t - 1.0) * (23.0 * t2 - 23.0 * t - 1.0) / 270.0,
                    (313.0 * t4 - 626.0 * t3 + 339.0 * t2 - 26.0 * t + 1.0) /
                        4320.0};
      break;
    case SeriesKind::f_of_eta: {
      std::array<double, 5> c = f_zeta_closed_coeffs(anchor);
      out.values.assign(c.begin(), c.end());
      break;
    }
    case SeriesKind::xi_of_rho:
      out.values = {0.0,
                    1.0,
                    (5.0 * t - 4.0) / 6.0,
                    (47.0 * t2 - 74.0 * t + 26.0) / 72.0,
                    (268.0 * t3 - 627.0 * t2 + 453.0 * t - 92.0) / 540.0,
                    (6409.0 * t4 - 19868.0 * t3 + 21792.0 * t2 -
                     9608.0 * t + 1252.0) /
                        17280.0};
      break;
  }
  return out;
}

}  // namespace bincdf
