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

#include "bincdf/negbinomial.hpp"

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

constexpr double kTermCut = 1e-18;
constexpr long long kMaxWindowTerms = 100000000;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

void check_alpha_nb(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    std::ostringstream os;
    os << "nb_invert: alpha=" << alpha << " outside (0, 1]";
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

// Negative binomial probability term Gamma(r+k)/(Gamma(r) k!) p^r (1-p)^k
// through the beta density identity; valid for real r.
double nb_term(double r, double p, long long k) {
  double kk = static_cast<double>(k);
  return beta_front_factor(p, r, kk + 1.0) / ((1.0 - p) * (r + kk));
}

// CDF probe for refinement: exact windowed sum while the effective size
// r + x + 1 is moderate, the asymptotic beta path beyond, dropping back to
// the exact sum when the value is too close to alpha to decide.
double nb_probe(double r, double p, long long x, double alpha,
                const AsymptoticConfig& cfg) {
  if (x < 0) return 0.0;
  double nu = r + static_cast<double>(x) + 1.0;
  if (nu <= cfg.exact_probe_nu_max) return nb_cdf_exact(r, p, x);
  double v = inc_beta_asym(p, r, static_cast<double>(x) + 1.0, cfg);
  if (std::fabs(v - alpha) <= cfg.probe_error_band) {
    return nb_cdf_exact(r, p, x);
  }
  return v;
}

InversionResult nb_bisection(double r, double p, double alpha, long long cap,
                             const AsymptoticConfig& cfg) {
  InversionResult res;
  res.eta0 = quiet_nan();
  res.eta1 = quiet_nan();
  res.xi0 = quiet_nan();
  res.xi = quiet_nan();
  res.fallback_used = true;
  int steps = 0;
  double vcap = nb_probe(r, p, cap, alpha, cfg);
  ++steps;
  if (!(vcap >= alpha)) {
    std::ostringstream os;
    os << "nb_invert: alpha=" << alpha
       << " not attained below the support cap " << cap << " (CDF there is "
       << vcap << ")";
    throw std::range_error(os.str());
  }
  long long lo = -1;
  long long hi = cap;
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    double v = nb_probe(r, p, mid, alpha, cfg);
    ++steps;
    if (v >= alpha) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  res.x_int = hi;
  res.achieved_cdf = nb_probe(r, p, hi, alpha, cfg);
  ++steps;
  res.refinement_steps = steps;
  res.x_real = static_cast<double>(hi);
  return res;
}

}  // namespace

void NegBinomialParams::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) {
    std::ostringstream os;
    os << "NegBinomialParams: r=" << r << " must be positive and finite";
    throw std::domain_error(os.str());
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream os;
    os << "NegBinomialParams: p=" << p << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
}

NbExactCdfInfo nb_cdf_exact_info(double r, double p, long long x) {
  NegBinomialParams{r, p}.validate();
  if (x < 0) return {0.0, false, 0};
  double q = 1.0 - p;
  // Peak of the term sequence; windows away from it shrink fast.
  double peak = (r * q - 1.0) / p;
  if (static_cast<double>(x) <= peak) {
    KahanSum acc;
    double t = nb_term(r, p, x);
    acc.add(t);
    long long terms = 1;
    for (long long k = x; k > 0; --k) {
      t *= static_cast<double>(k) / ((r + static_cast<double>(k) - 1.0) * q);
      acc.add(t);
      ++terms;
      if (t < kTermCut * acc.s) break;
    }
    return {acc.s, false, terms};
  }
  KahanSum acc;
  double t = nb_term(r, p, x + 1);
  acc.add(t);
  long long terms = 1;
  for (long long k = x + 1; terms < kMaxWindowTerms; ++k) {
    t *= (r + static_cast<double>(k)) * q / (static_cast<double>(k) + 1.0);
    acc.add(t);
    ++terms;
    if (t < kTermCut * acc.s) break;
  }
  if (terms >= kMaxWindowTerms) {
    throw std::runtime_error(
        "nb_cdf_exact: survival window failed to converge");
  }
  return {1.0 - acc.s, true, terms};
}

double nb_cdf_exact(double r, double p, long long x) {
  return nb_cdf_exact_info(r, p, x).value;
}

double psi(double xi, double p) {
  if (!(xi > 0.0) || !(xi < 1.0)) {
    std::ostringstream os;
    os << "psi: xi=" << xi << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream os;
    os << "psi: p=" << p << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  return -kl_bernoulli(xi, p) / xi;
}

double psi_prime(double xi, double p) {
  if (!(xi > 0.0) || !(xi < 1.0)) {
    std::ostringstream os;
    os << "psi_prime: xi=" << xi << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream os;
    os << "psi_prime: p=" << p << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  // log((1-p)/(1-xi)) evaluated without cancellation near xi = p.
  double g = std::log1p(-p) - std::log1p(-xi);
  return -g / (xi * xi);
}

double solve_psi(double rho, double p, const AsymptoticConfig& cfg) {
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream os;
    os << "solve_psi: p=" << p << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  cfg.validate();
  if (rho == 0.0) return p;
  // The range of chi is (-sqrt(-2 log p), +inf): only negative rho can
  // leave it, because psi is unbounded below as xi tends to 0.
  double bound2 = -2.0 * std::log(p);
  if (rho < 0.0 && !(rho * rho < bound2)) {
    std::ostringstream os;
    os << "solve_psi: rho=" << rho << " at or below the attainable bound -"
       << std::sqrt(bound2) << " for p=" << p;
    throw std::range_error(os.str());
  }
  // chi(xi) = sign(p - xi) sqrt(-2 psi) decreases from +inf at 0 through 0
  // at p to -sqrt(-2 log p) at 1.
  double lo = rho > 0.0 ? 0.0 : p;
  double hi = rho > 0.0 ? p : 1.0;
  double xi;
  if (std::fabs(rho / std::sqrt(1.0 - p)) <= cfg.series_radius_guard) {
    xi = xi_from_rho_series(rho, p, 5);
  } else {
    xi = 0.5 * (lo + hi);
  }
  if (!(xi > lo) || !(xi < hi)) xi = 0.5 * (lo + hi);

  double tol = cfg.newton_tol * std::max(1.0, std::fabs(rho));
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    double m2psi = -2.0 * psi(xi, p);
    double chi = xi < p ? std::sqrt(m2psi) : -std::sqrt(m2psi);
    double res = chi - rho;
    if (res > 0.0) {
      lo = xi;
    } else if (res < 0.0) {
      hi = xi;
    }
    if (std::fabs(res) <= tol) return xi;
    // chi' = -psi' / chi; limit -1/(sqrt(xi) lambda) at xi = p.
    double dchi;
    if (std::fabs(chi) < 1e-12) {
      dchi = -1.0 / (std::sqrt(xi) * std::sqrt(xi * (1.0 - xi)));
    } else {
      dchi = -psi_prime(xi, p) / chi;
    }
    double step = res / dchi;
    double xn = xi - step;
    if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
    if (xn == xi) return xi;
    xi = xn;
  }
  return xi;
}

double xi_from_rho_series(double rho, double p, int k_max) {
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream os;
    os << "xi_from_rho_series: p=" << p << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  if (k_max < 1 || k_max > 5) {
    std::ostringstream os;
    os << "xi_from_rho_series: k_max=" << k_max << " outside [1, 5]";
    throw std::domain_error(os.str());
  }
  SeriesCoefficients tab = series_coefficients(SeriesKind::xi_of_rho, p);
  double rhot = rho / std::sqrt(1.0 - p);
  double acc = 0.0;
  for (int k = k_max; k >= 1; --k) acc = (acc + tab.values[k]) * rhot;
  return p - p * (1.0 - p) * acc;
}

double p_from_rho_series(double rho, double xi, int k_max) {
  if (!(xi > 0.0) || !(xi < 1.0)) {
    std::ostringstream os;
    os << "p_from_rho_series: xi=" << xi << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  if (k_max < 1 || k_max > 5) {
    std::ostringstream os;
    os << "p_from_rho_series: k_max=" << k_max << " outside [1, 5]";
    throw std::domain_error(os.str());
  }
  SeriesCoefficients tab = series_coefficients(SeriesKind::p_of_rho, xi);
  double rhoh = rho / std::sqrt(1.0 - xi);
  double acc = 0.0;
  for (int k = k_max; k >= 1; --k) acc = (acc + tab.values[k]) * rhoh;
  return xi + xi * (1.0 - xi) * acc;
}

double nb_support_cap(double r, double p) {
  NegBinomialParams{r, p}.validate();
  double q = 1.0 - p;
  double mean = r * q / p;
  double sigma = std::sqrt(r * q) / p;
  return std::ceil(mean + 20.0 * sigma + 50.0);
}

InversionResult nb_invert(double r, double p, double alpha,
                          const AsymptoticConfig& cfg) {
  NegBinomialParams{r, p}.validate();
  if (!(r >= 1.0)) {
    std::ostringstream os;
    os << "nb_invert: r=" << r << " must be at least 1";
    throw std::domain_error(os.str());
  }
  check_alpha_nb(alpha);
  cfg.validate();
  double cap_real = nb_support_cap(r, p);
  long long cap = cap_real >= 9.0e18 ? std::numeric_limits<long long>::max()
                                     : static_cast<long long>(cap_real);

  InversionResult res;
  res.fallback_used = false;
  res.refinement_steps = 0;
  if (alpha == 1.0) {
    // Smallest x where the CDF saturates to 1 in double precision.
    return nb_bisection(r, p, 1.0, cap, cfg);
  }
  double cdf0 = std::exp(r * std::log(p));
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

  double z = inverfc(2.0 * alpha);
  double rho = -z * std::sqrt(2.0 / r);
  // Only the lower branch (rho < 0, xi > p) can leave the attainable range.
  double bound2 = -2.0 * std::log(p);
  if (rho < 0.0 && !(rho * rho < bound2)) {
    return nb_bisection(r, p, alpha, cap, cfg);
  }
  double xi0 = solve_psi(rho, p, cfg);
  double x0 = r / xi0 - r - 1.0;
  double eta0 = rho * std::sqrt(xi0);
  double eta1 = eta1_correction(eta0, xi0, p, cfg);
  double nu0 = r + x0 + 1.0;
  double eta = eta0 + eta1 / nu0;
  double rho2 = eta / std::sqrt(xi0);
  if (rho2 < 0.0 && !(rho2 * rho2 < bound2)) {
    return nb_bisection(r, p, alpha, cap, cfg);
  }
  double xi = solve_psi(rho2, p, cfg);
  double x_real = r / xi - r - 1.0;

  res.eta0 = eta0;
  res.eta1 = eta1;
  res.xi0 = xi0;
  res.xi = xi;
  res.x_real = x_real;

  long long x = static_cast<long long>(std::ceil(std::max(x_real, 0.0)));
  x = std::clamp<long long>(x, 0, cap);
  int steps = 0;
  double v = nb_probe(r, p, x, alpha, cfg);
  ++steps;
  while (v < alpha && x < cap) {
    ++x;
    v = nb_probe(r, p, x, alpha, cfg);
    ++steps;
  }
  if (v < alpha) {
    std::ostringstream os;
    os << "nb_invert: alpha=" << alpha
       << " not attained below the support cap " << cap;
    throw std::range_error(os.str());
  }
  while (x > 0) {
    double vd = nb_probe(r, p, x - 1, alpha, cfg);
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

long long nb_quantile_scan_oracle(double r, double p, double alpha) {
  NegBinomialParams{r, p}.validate();
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    std::ostringstream os;
    os << "nb_quantile_scan_oracle: alpha=" << alpha << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  long long cap = static_cast<long long>(
      std::min(nb_support_cap(r, p), 9.0e18));
  long double lr = static_cast<long double>(r);
  long double lp = static_cast<long double>(p);
  long double lq = 1.0L - lp;
  long double t = expl(lr * logl(lp));
  long double sum = t;
  long double comp = 0.0L;
  long double target = static_cast<long double>(alpha);
  long long k = 0;
  while (sum + comp < target && k < cap) {
    t *= (lr + static_cast<long double>(k)) * lq /
         (static_cast<long double>(k) + 1.0L);
    ++k;
    long double s = sum + t;
    if (fabsl(sum) >= fabsl(t)) {
      comp += (sum - s) + t;
    } else {
      comp += (t - s) + sum;
    }
    sum = s;
  }
  if (sum + comp < target) {
    std::ostringstream os;
    os << "nb_quantile_scan_oracle: alpha=" << alpha
       << " not attained below the support cap " << cap;
    throw std::range_error(os.str());
  }
  // The running sum only locates the boundary; the contract is stated in
  // terms of nb_cdf_exact, so resolve exact ties against it.
  while (k > 0 && nb_cdf_exact(r, p, k - 1) >= alpha) --k;
  while (k < cap && nb_cdf_exact(r, p, k) < alpha) ++k;
  return k;
}

}  // namespace bincdf
