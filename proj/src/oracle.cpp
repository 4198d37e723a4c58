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

#include "bincdf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "bincdf/binomial.hpp"
#include "bincdf/binomial_inv.hpp"
#include "bincdf/negbinomial.hpp"
#include "bincdf/special.hpp"

namespace bincdf {
namespace {

// CDF at real x through the reference beta path.
double ref_cdf(Distribution dist, double size, double p, double x) {
  if (dist == Distribution::binomial) {
    if (x <= -1.0) return 0.0;
    if (x >= size) return 1.0;
    return inc_beta_ref(1.0 - p, size - x, x + 1.0);
  }
  if (x <= -1.0) return 0.0;
  return inc_beta_ref(p, size, x + 1.0);
}

unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const char* env = std::getenv("BINV_THREADS");
  if (env != nullptr) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) {
      hw = std::min<long>(v, 256);
    }
  }
  return hw;
}

}  // namespace

std::vector<double> default_p_grid() {
  std::vector<double> grid;
  grid.reserve(181);
  for (int i = 0; i <= 180; ++i) {
    grid.push_back((10 + i) / 200.0);
  }
  return grid;
}

double real_quantile_oracle(Distribution dist, double size, double p,
                            double alpha) {
  if (!(size > 0.0) || !std::isfinite(size)) {
    std::ostringstream os;
    os << "real_quantile_oracle: size=" << size << " must be positive";
    throw std::domain_error(os.str());
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream os;
    os << "real_quantile_oracle: p=" << p << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    std::ostringstream os;
    os << "real_quantile_oracle: alpha=" << alpha << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  // The CDF is continuous and strictly increasing in real x, so bisection
  // on a verified bracket cannot fail.
  double lo = -1.0 + 1e-9;
  double hi;
  if (dist == Distribution::binomial) {
    hi = size - 1e-9;
  } else {
    double q = 1.0 - p;
    hi = std::max(size * q / p + 10.0 * std::sqrt(size * q) / p, 10.0);
    int grow = 0;
    while (ref_cdf(dist, size, p, hi) < alpha) {
      hi *= 2.0;
      if (++grow > 64) {
        std::ostringstream os;
        os << "real_quantile_oracle: no upper bracket for alpha=" << alpha;
        throw std::range_error(os.str());
      }
    }
  }
  double flo = ref_cdf(dist, size, p, lo);
  double fhi = ref_cdf(dist, size, p, hi);
  if (!(flo < alpha) || !(fhi >= alpha)) {
    std::ostringstream os;
    os << "real_quantile_oracle: alpha=" << alpha
       << " outside the bracketed CDF range [" << flo << ", " << fhi << "]";
    throw std::range_error(os.str());
  }
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (ref_cdf(dist, size, p, mid) < alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-10 * std::max(1.0, std::fabs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                const AsymptoticConfig& cfg) {
  cfg.validate();
  if (spec.size_param < 1) {
    std::ostringstream os;
    os << "run_sweep: size_param=" << spec.size_param
       << " must be at least 1";
    throw std::domain_error(os.str());
  }
  if (!(spec.alpha > 0.0) || !(spec.alpha < 1.0)) {
    std::ostringstream os;
    os << "run_sweep: alpha=" << spec.alpha << " outside (0, 1)";
    throw std::domain_error(os.str());
  }
  std::vector<double> grid =
      spec.p_grid.empty() ? default_p_grid() : spec.p_grid;
  for (double p : grid) {
    if (!(p > 0.0) || !(p < 1.0)) {
      std::ostringstream os;
      os << "run_sweep: grid point p=" << p << " outside (0, 1)";
      throw std::domain_error(os.str());
    }
  }

  std::vector<SweepRow> rows(grid.size());
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      double p = grid[i];
      InversionResult inv;
      if (spec.dist == Distribution::binomial) {
        inv = invert(spec.size_param, p, spec.alpha, cfg);
      } else {
        inv = nb_invert(static_cast<double>(spec.size_param), p, spec.alpha,
                        cfg);
      }
      double x_oracle = real_quantile_oracle(
          spec.dist, static_cast<double>(spec.size_param), p, spec.alpha);
      double err;
      if (spec.metric == SweepMetric::relative_x_error) {
        err = std::fabs(inv.x_real - x_oracle) /
              std::max(std::fabs(x_oracle), 1e-300);
      } else {
        double achieved = ref_cdf(spec.dist,
                                  static_cast<double>(spec.size_param), p,
                                  inv.x_real);
        err = std::fabs(achieved - spec.alpha);
      }
      rows[i] = SweepRow{p, inv.x_real, x_oracle, err, inv.fallback_used};
    }
  };

  size_t nthreads = std::min<size_t>(thread_cap(), grid.size());
  if (nthreads <= 1) {
    work(0, grid.size());
    return rows;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  size_t chunk = (grid.size() + nthreads - 1) / nthreads;
  for (size_t t = 0; t < nthreads; ++t) {
    size_t begin = t * chunk;
    size_t end = std::min(grid.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace bincdf
