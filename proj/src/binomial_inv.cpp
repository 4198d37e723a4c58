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

#include "bincdf/binomial_inv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bincdf/beta_asym.hpp"
#include "bincdf/binomial.hpp"
#include "bincdf/special.hpp"

namespace bincdf {
namespace {

constexpr int kSeriesOrder = 18;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    std::ostringstream os;
    os << "invert: alpha=" << alpha << " outside (0, 1]";
    throw std::domain_error(os.str());
  }
}

// CDF probe for refinement: exact windowed sum while nu is moderate, the
// asymptotic beta path beyond, dropping back to the exact sum whenever the
// asymptotic value is too close to alpha to decide the comparison.
double probe_cdf(long long n, double p, long long k, double alpha,
                 const AsymptoticConfig& cfg) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  double nu = static_cast<double>(n) + 1.0;
  if (nu <= cfg.exact_probe_nu_max) return cdf_exact(n, p, k);
  double v = cdf(n, p, static_cast<double>(k), CdfMethod::beta_asym, cfg);
  if (std::fabs(v - alpha) <= cfg.probe_error_band) return cdf_exact(n, p, k);
  return v;
}

InversionResult bisection_fallback(long long n, double p, double alpha,
                                   const AsymptoticConfig& cfg) {
  InversionResult res;
  res.eta0 = quiet_nan();
  res.eta1 = quiet_nan();
  res.xi0 = quiet_nan();
  res.xi = quiet_nan();
  res.fallback_used = true;
  long long lo = -1;  // CDF 0 by convention
  long long hi = n;   // CDF 1 >= alpha always
  int steps = 0;
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    double v = probe_cdf(n, p, mid, alpha, cfg);
    ++steps;
    if (v >= alpha) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  res.x_int = hi;
  res.achieved_cdf = probe_cdf(n, p, hi, alpha, cfg);
  ++steps;
  res.refinement_steps = steps;
  res.x_real = static_cast<double>(hi);
  return res;
}

}  // namespace

std::array<double, 4> eta1_series_coeffs(double xi) {
  if (!(xi > 0.0) || !(xi < 1.0)) {
    std::ostringstream os;
    os << "eta1_series_coeffs: xi=" << xi << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  double lam = std::sqrt(xi * (1.0 - xi));
  double lam2 = lam * lam;
  double x2 = xi * xi;
  double x3 = x2 * xi;
  double x4 = x2 * x2;
  std::array<double, 4> t;
  t[0] = (2.0 * xi - 1.0) / (3.0 * lam);
  t[1] = -(5.0 * x2 - 5.0 * xi - 1.0) / (36.0 * lam2);
  t[2] = (2.0 * xi - 1.0) * (23.0 * x2 - 23.0 * xi - 1.0) /
         (1620.0 * lam2 * lam);
  t[3] = -(31.0 * x4 - 62.0 * x3 + 33.0 * x2 - 2.0 * xi + 7.0) /
         (6480.0 * lam2 * lam2);
  return t;
}

double eta1_correction(double eta0, double xi0, double p,
                       const AsymptoticConfig& cfg) {
  if (!(xi0 > 0.0) || !(xi0 < 1.0)) {
    std::ostringstream os;
    os << "eta1_correction: xi0=" << xi0 << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream os;
    os << "eta1_correction: p=" << p << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  cfg.validate();
  double lam = std::sqrt(xi0 * (1.0 - xi0));
  double eta_hat = eta0 / lam;
  bool oriented = eta0 != 0.0 && p != xi0 && (eta0 > 0.0) == (p > xi0);
  if (std::fabs(eta0) <= cfg.eta1_series_switch &&
      (std::fabs(eta_hat) <= 0.6 || !oriented)) {
    // eta1 = log(f(eta0)) / eta0 through log1p of the series of f - 1; no
    // cancellation as eta0 -> 0 and the limit c_1 / lambda is exact.
    std::vector<double> chat = f_zeta_taylor(xi0, kSeriesOrder);
    if (eta0 == 0.0) return chat[1] / lam;
    double fm1 = 0.0;
    for (int k = kSeriesOrder; k >= 1; --k) fm1 = fm1 * eta_hat + chat[k];
    fm1 *= eta_hat;
    return std::log1p(fm1) / eta0;
  }
  if (!oriented) {
    std::ostringstream os;
    os << "eta1_correction: sign(p - xi0) must match sign(eta0); got eta0="
       << eta0 << ", xi0=" << xi0 << ", p=" << p;
    throw std::domain_error(os.str());
  }
  double f = eta0 * lam / (p - xi0);
  return std::log(f) / eta0;
}

InversionResult invert(long long n, double p, double alpha,
                       const AsymptoticConfig& cfg) {
  BinomialParams{n, p}.validate();
  check_alpha(alpha);
  cfg.validate();

  InversionResult res;
  res.fallback_used = false;
  res.refinement_steps = 0;
  if (alpha == 1.0) {
    res.x_real = static_cast<double>(n);
    res.x_int = n;
    res.achieved_cdf = 1.0;
    res.eta0 = quiet_nan();
    res.eta1 = quiet_nan();
    res.xi0 = quiet_nan();
    res.xi = quiet_nan();
    return res;
  }
  double cdf0 = std::exp(static_cast<double>(n) * std::log1p(-p));
  if (alpha <= cdf0) {
    res.x_real = 0.0;
    res.x_int = 0;
    res.achieved_cdf = cdf0;
    res.eta0 = quiet_nan();
    res.eta1 = quiet_nan();
    res.xi0 = quiet_nan();
    res.xi = quiet_nan();
    res.refinement_steps = 1;
    return res;
  }

  double nu = static_cast<double>(n) + 1.0;
  double eta0 = std::sqrt(2.0 / nu) * inverfc(2.0 * alpha);
  double eta_min = -std::sqrt(-2.0 * std::log(p));
  double eta_max = std::sqrt(-2.0 * std::log1p(-p));
  if (!(eta0 > eta_min) || !(eta0 < eta_max)) {
    return bisection_fallback(n, p, alpha, cfg);
  }
  double xi0 = xi_from_eta(eta0, p, cfg);
  double eta1 = eta1_correction(eta0, xi0, p, cfg);
  double eta = eta0 + eta1 / nu;
  if (!(eta > eta_min) || !(eta < eta_max)) {
    return bisection_fallback(n, p, alpha, cfg);
  }
  double xi = xi_from_eta(eta, p, cfg);
  double x_real = xi * nu - 1.0;

  res.eta0 = eta0;
  res.eta1 = eta1;
  res.xi0 = xi0;
  res.xi = xi;
  res.x_real = x_real;

  long long x = static_cast<long long>(std::ceil(x_real));
  x = std::clamp<long long>(x, 0, n);
  int steps = 0;
  double v = probe_cdf(n, p, x, alpha, cfg);
  ++steps;
  while (v < alpha && x < n) {
    ++x;
    v = probe_cdf(n, p, x, alpha, cfg);
    ++steps;
  }
  while (x > 0) {
    double vd = probe_cdf(n, p, x - 1, alpha, cfg);
    ++steps;
    if (vd >= alpha) {
      --x;
      v = vd;
    } else {
      break;
    }
  }
  res.x_int = x;
  res.achieved_cdf = v;
  res.refinement_steps = steps;
  return res;
}

long long quantile_scan_oracle(long long n, double p, double alpha) {
  BinomialParams{n, p}.validate();
  check_alpha(alpha);
  long double lp = static_cast<long double>(p);
  long double q = 1.0L - lp;
  long double t = expl(static_cast<long double>(n) * log1pl(-lp));
  long double sum = t;
  long double comp = 0.0L;
  long double target = static_cast<long double>(alpha);
  long long k = 0;
  while (sum + comp < target && k < n) {
    t *= static_cast<long double>(n - k) / static_cast<long double>(k + 1) *
         (lp / q);
    ++k;
    // Neumaier compensation keeps the running sum honest over long scans.
    long double s = sum + t;
    if (fabsl(sum) >= fabsl(t)) {
      comp += (sum - s) + t;
    } else {
      comp += (t - s) + sum;
    }
    sum = s;
  }
  // The running sum only locates the boundary; the contract is stated in
  // terms of cdf_exact, so resolve exact ties against it.
  while (k > 0 && cdf_exact(n, p, k - 1) >= alpha) --k;
  while (k < n && cdf_exact(n, p, k) < alpha) ++k;
  return k;
}

}  // namespace bincdf
