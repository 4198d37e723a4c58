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

#include "bincdf/beta_asym.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bincdf/special.hpp"

namespace bincdf {
namespace {

constexpr double kPi = 3.14159265358979323846;
// Order of the runtime Taylor machinery; truncation ~3e-13 at the default
// switch radius 0.2.
constexpr int kSeriesOrder = 18;

void check_xi(double xi, const char* who) {
  if (!(xi > 0.0) || !(xi < 1.0)) {
    std::ostringstream os;
    os << who << ": xi=" << xi << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
}

// Truncated product of power series (orders match vector sizes).
std::vector<double> series_mul(const std::vector<double>& u,
                               const std::vector<double>& v, int order) {
  std::vector<double> w(order + 1, 0.0);
  for (int i = 0; i <= order && i < static_cast<int>(u.size()); ++i) {
    if (u[i] == 0.0) continue;
    int jmax = std::min<int>(order - i, static_cast<int>(v.size()) - 1);
    for (int j = 0; j <= jmax; ++j) w[i + j] += u[i] * v[j];
  }
  return w;
}

// sqrt of a power series with constant term 1.
std::vector<double> series_sqrt(const std::vector<double>& a, int order) {
  std::vector<double> b(order + 1, 0.0);
  b[0] = 1.0;
  for (int k = 1; k <= order; ++k) {
    double acc = k < static_cast<int>(a.size()) ? a[k] : 0.0;
    for (int i = 1; i < k; ++i) acc -= b[i] * b[k - i];
    b[k] = 0.5 * acc;
  }
  return b;
}

// Reciprocal of a power series with constant term 1.
std::vector<double> series_recip(const std::vector<double>& e, int order) {
  std::vector<double> c(order + 1, 0.0);
  c[0] = 1.0;
  for (int k = 1; k <= order; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= k; ++i) {
      double ei = i < static_cast<int>(e.size()) ? e[i] : 0.0;
      acc += ei * c[k - i];
    }
    c[k] = -acc;
  }
  return c;
}

// Reversion of w = sum_{k>=1} f[k] z^k with f[1] = 1: returns u with
// z = sum_{k>=1} u[k] w^k.
std::vector<double> series_revert(const std::vector<double>& f, int order) {
  std::vector<double> u(order + 1, 0.0);
  u[1] = 1.0;
  for (int m = 2; m <= order; ++m) {
    // Accumulate [w^m] of sum_j f[j] (current u-series)^j for j = 2..m;
    // the j = 1 term contributes u[m] itself, so u[m] = -acc.
    std::vector<double> upow(u.begin(), u.begin() + (m + 1));
    double acc = 0.0;
    for (int j = 2; j <= m; ++j) {
      upow = series_mul(upow, u, m);
      double fj = j < static_cast<int>(f.size()) ? f[j] : 0.0;
      acc += fj * upow[m];
    }
    u[m] = -acc;
  }
  return u;
}

// Coefficients A_j of eta_hat^2 = g^2 sum_j A_j g^j, g = (x - xi)/lambda^2:
//   A_j = 2/(j + 2) [(-1)^j (1 - xi)^{j+1} + xi^{j+1}].
std::vector<double> eta_sq_coeffs(double xi, int order) {
  std::vector<double> a(order + 1, 0.0);
  double pow_x = xi;
  double pow_q = 1.0 - xi;
  double sgn = 1.0;
  for (int j = 0; j <= order; ++j) {
    a[j] = 2.0 / (j + 2.0) * (sgn * pow_q + pow_x);
    pow_x *= xi;
    pow_q *= 1.0 - xi;
    sgn = -sgn;
  }
  return a;
}

struct FzSeries {
  // Coefficients of f in raw zeta powers: fz[j] = c_hat[j] / lambda^j.
  std::vector<double> fz;
};

FzSeries make_fz(double xi, int order) {
  std::vector<double> chat = f_zeta_taylor(xi, order);
  double lam = std::sqrt(xi * (1.0 - xi));
  FzSeries out;
  out.fz.assign(order + 1, 0.0);
  double scale = 1.0;
  for (int j = 0; j <= order; ++j) {
    out.fz[j] = chat[j] * scale;
    scale /= lam;
  }
  return out;
}

// C(eta) = sum_{j>=1} coeff[j] eta^{j-1} for a coefficient table in raw zeta
// powers with the constant term dropped.
double series_ck_value(const std::vector<double>& coeff, double eta) {
  double acc = 0.0;
  for (int j = static_cast<int>(coeff.size()) - 1; j >= 1; --j) {
    acc = acc * eta + coeff[j];
  }
  return acc;
}

// One step of the coefficient recursion: next[m] = cur[m + 2] * (m + 1).
std::vector<double> ck_shift(const std::vector<double>& cur) {
  int n = static_cast<int>(cur.size());
  std::vector<double> next(std::max(n - 2, 1), 0.0);
  for (int m = 0; m + 2 < n; ++m) next[m] = cur[m + 2] * (m + 1.0);
  return next;
}

}  // namespace

EtaTransform make_eta_transform(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os << "make_eta_transform: parameters (" << a << ", " << b
       << ") must be positive";
    throw std::domain_error(os.str());
  }
  if (!(x > 0.0) || !(x < 1.0)) {
    std::ostringstream os;
    os << "make_eta_transform: x=" << x << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  EtaTransform t;
  t.nu = a + b;
  t.xi = a / t.nu;
  t.lambda = std::sqrt(t.xi * (1.0 - t.xi));
  t.eta = eta_from_x(x, t.xi);
  return t;
}

double eta_from_x(double x, double xi) {
  check_xi(xi, "eta_from_x");
  if (!(x > 0.0) || !(x < 1.0)) {
    std::ostringstream os;
    os << "eta_from_x: x=" << x << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  double kl = kl_bernoulli(xi, x);
  double mag = std::sqrt(2.0 * kl);
  return x >= xi ? mag : -mag;
}

double x_from_eta(double eta, double xi, const AsymptoticConfig& cfg) {
  check_xi(xi, "x_from_eta");
  cfg.validate();
  if (eta == 0.0) return xi;
  double lam = std::sqrt(xi * (1.0 - xi));
  double eta_hat = eta / lam;

  // Bracket by sign; eta(x) is increasing with eta(xi) = 0.
  double lo = eta > 0.0 ? xi : 0.0;
  double hi = eta > 0.0 ? 1.0 : xi;

  // Series start x ~ xi + lambda^2 (h + b2 h^2 + b3 h^3), h = eta/lambda.
  double x;
  if (std::fabs(eta_hat) <= cfg.series_radius_guard) {
    double b2 = (1.0 - 2.0 * xi) / 3.0;
    double b3 = (13.0 * xi * xi - 13.0 * xi + 1.0) / 36.0;
    x = xi + lam * lam * (eta_hat * (1.0 + eta_hat * (b2 + eta_hat * b3)));
  } else {
    x = 0.5 * (lo + hi);
  }
  if (!(x > lo) || !(x < hi)) x = 0.5 * (lo + hi);

  double tol = cfg.newton_tol * std::max(1.0, std::fabs(eta));
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    double phi = eta_from_x(x, xi);
    double res = phi - eta;
    if (res > 0.0) {
      hi = x;
    } else if (res < 0.0) {
      lo = x;
    }
    if (std::fabs(res) <= tol) return x;
    // phi'(x) = (x - xi) / (x (1 - x) phi); limit 1/lambda at x = xi.
    double dphi;
    if (std::fabs(phi) < 1e-12) {
      dphi = 1.0 / lam;
    } else {
      dphi = (x - xi) / (x * (1.0 - x) * phi);
    }
    double step = res / dphi;
    double xn = x - step;
    if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
    if (xn == x) return x;
    x = xn;
  }
  return x;
}

std::vector<double> f_zeta_taylor(double xi, int order) {
  check_xi(xi, "f_zeta_taylor");
  if (order < 0 || order > 64) {
    std::ostringstream os;
    os << "f_zeta_taylor: order=" << order << " outside [0, 64]";
    throw std::domain_error(os.str());
  }
  int n = order;
  // eta_hat^2 = g^2 A(g) with g = (x - xi)/lambda^2; eta_hat = g sqrt(A);
  // revert to g(eta_hat); f = eta_hat / g(eta_hat).
  std::vector<double> a = eta_sq_coeffs(xi, n);
  std::vector<double> b = series_sqrt(a, n);
  std::vector<double> fwd(n + 2, 0.0);
  for (int k = 1; k <= n + 1; ++k) {
    fwd[k] = (k - 1) <= n ? b[k - 1] : 0.0;
  }
  std::vector<double> u = series_revert(fwd, n + 1);
  std::vector<double> e(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) e[k] = u[k + 1];
  return series_recip(e, n);
}

std::array<double, 5> f_zeta_closed_coeffs(double xi) {
  check_xi(xi, "f_zeta_closed_coeffs");
  std::array<double, 5> c;
  c[0] = 1.0;
  c[1] = (2.0 * xi - 1.0) / 3.0;
  c[2] = (xi * xi - xi + 1.0) / 12.0;
  c[3] = -(2.0 * xi - 1.0) * (xi - 2.0) * (xi + 1.0) / 135.0;
  double w = xi * xi - xi + 1.0;
  c[4] = w * w / 864.0;
  return c;
}

double f_of_zeta(double zeta, double xi, const AsymptoticConfig& cfg) {
  check_xi(xi, "f_of_zeta");
  cfg.validate();
  double lam = std::sqrt(xi * (1.0 - xi));
  double zhat = zeta / lam;
  if (std::fabs(zhat) <= cfg.taylor_switch_radius) {
    std::vector<double> chat = f_zeta_taylor(xi, kSeriesOrder);
    double acc = 0.0;
    for (int k = kSeriesOrder; k >= 0; --k) acc = acc * zhat + chat[k];
    return acc;
  }
  double x = x_from_eta(zeta, xi, cfg);
  return zeta * lam / (x - xi);
}

double f_nu_infinity(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os << "f_nu_infinity: parameters (" << a << ", " << b
       << ") must be positive";
    throw std::domain_error(os.str());
  }
  return gamma_star(a) * gamma_star(b) / gamma_star(a + b);
}

double f_nu_infinity_series(double a, double b, int k_terms) {
  if (!(a > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os << "f_nu_infinity_series: parameters (" << a << ", " << b
       << ") must be positive";
    throw std::domain_error(os.str());
  }
  if (k_terms < 1 || k_terms > 4) {
    std::ostringstream os;
    os << "f_nu_infinity_series: k_terms=" << k_terms << " outside [1, 4]";
    throw std::domain_error(os.str());
  }
  double nu = a + b;
  double xi = a / nu;
  std::array<double, 4> fk = fk_table(xi);
  double acc = 0.0;
  double scale = 1.0;
  for (int k = 0; k < k_terms; ++k) {
    acc += fk[k] * scale;
    scale /= nu;
  }
  return acc;
}

std::array<double, 4> fk_table(double xi) {
  check_xi(xi, "fk_table");
  double lam2 = xi * (1.0 - xi);
  double w = 1.0 - xi + xi * xi;
  std::array<double, 4> f;
  f[0] = 1.0;
  f[1] = w / (12.0 * lam2);
  f[2] = w * w / (288.0 * lam2 * lam2);
  double x2 = xi * xi;
  double x3 = x2 * xi;
  double poly = 139.0 * x3 * x3 - 417.0 * x2 * x3 + 402.0 * x2 * x2 -
                109.0 * x3 + 402.0 * x2 - 417.0 * xi + 139.0;
  f[3] = -poly / (51840.0 * lam2 * lam2 * lam2);
  return f;
}

std::vector<double> ck_coefficients(double eta, double xi, int k_max,
                                    const AsymptoticConfig& cfg,
                                    bool* series_warning) {
  check_xi(xi, "ck_coefficients");
  cfg.validate();
  if (k_max < 0 || k_max > 8) {
    std::ostringstream os;
    os << "ck_coefficients: k_max=" << k_max << " outside [0, 8]";
    throw std::domain_error(os.str());
  }
  double lam = std::sqrt(xi * (1.0 - xi));
  double eta_hat = eta / lam;
  bool outside = std::fabs(eta_hat) > cfg.taylor_switch_radius;
  if (series_warning != nullptr) *series_warning = outside && k_max >= 1;

  FzSeries s = make_fz(xi, kSeriesOrder);
  std::vector<double> out(k_max + 1, 0.0);
  if (!outside || eta == 0.0) {
    out[0] = series_ck_value(s.fz, eta);
  } else {
    double x = x_from_eta(eta, xi, cfg);
    double f = eta * lam / (x - xi);
    out[0] = (f - 1.0) / eta;
  }
  std::vector<double> cur = s.fz;
  for (int k = 1; k <= k_max; ++k) {
    cur = ck_shift(cur);
    out[k] = series_ck_value(cur, eta);
  }
  return out;
}

double inc_beta_asym(double x, double a, double b, const AsymptoticConfig& cfg,
                     bool* strip_warning) {
  if (!(a > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os << "inc_beta_asym: parameters (" << a << ", " << b
       << ") must be positive";
    throw std::domain_error(os.str());
  }
  if (!(x >= 0.0) || !(x <= 1.0)) {
    std::ostringstream os;
    os << "inc_beta_asym: x=" << x << " outside [0, 1]";
    throw std::domain_error(os.str());
  }
  cfg.validate();
  double nu = a + b;
  double xi = a / nu;
  if (strip_warning != nullptr) {
    *strip_warning =
        xi < cfg.uniformity_delta || xi > 1.0 - cfg.uniformity_delta;
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  double lam = std::sqrt(xi * (1.0 - xi));
  double kl = kl_bernoulli(xi, x);
  double eta = x >= xi ? std::sqrt(2.0 * kl) : -std::sqrt(2.0 * kl);
  double main = 0.5 * bincdf::erfc(-eta * std::sqrt(0.5 * nu));

  double expo = nu * kl;
  if (expo > 745.0) {
    return std::clamp(main, 0.0, 1.0);
  }
  double pref = std::exp(-expo) / (std::sqrt(2.0 * kPi * nu) *
                                   f_nu_infinity(a, b));
  double eta_hat = eta / lam;
  double abs_hat = std::fabs(eta_hat);
  // Closed coefficient forms cover the small-eta regime cheaply; the runtime
  // series covers the rest of the convergent range.
  constexpr double closed_radius = 0.15;
  double c0;
  double c1 = 0.0;
  bool need_c1 = cfg.max_Ck_terms >= 2;
  if (abs_hat <= closed_radius) {
    std::array<double, 5> c = f_zeta_closed_coeffs(xi);
    c0 = (c[1] + eta_hat * (c[2] + eta_hat * (c[3] + eta_hat * c[4]))) / lam;
    if (need_c1) {
      double lam3 = lam * lam * lam;
      c1 = 2.0 * c[3] / lam3 + 3.0 * c[4] / (lam3 * lam) * eta;
    }
  } else {
    double f = eta * lam / (x - xi);
    c0 = (f - 1.0) / eta;
    // Series coefficients beyond C_0 converge only for moderate eta_hat;
    // farther out their weight exp(-nu eta^2/2) is already negligible.
    if (need_c1 && abs_hat <= 2.0) {
      FzSeries s = make_fz(xi, kSeriesOrder);
      std::vector<double> f1 = ck_shift(s.fz);
      c1 = series_ck_value(f1, eta);
    } else {
      need_c1 = false;
    }
  }
  double corr = c0;
  if (need_c1) corr += c1 / nu;
  if (cfg.max_Ck_terms >= 3 && abs_hat <= 2.0) {
    FzSeries s = make_fz(xi, kSeriesOrder);
    std::vector<double> cur = ck_shift(ck_shift(s.fz));
    double scale = 1.0 / (nu * nu);
    for (int k = 2; k < cfg.max_Ck_terms; ++k) {
      corr += series_ck_value(cur, eta) * scale;
      scale /= nu;
      cur = ck_shift(cur);
    }
  }
  double val = main - pref * corr;
  return std::clamp(val, 0.0, 1.0);
}

}  // namespace bincdf
