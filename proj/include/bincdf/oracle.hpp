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

#ifndef BINCDF_ORACLE_HPP
#define BINCDF_ORACLE_HPP

#include <vector>

#include "bincdf/config.hpp"

namespace bincdf {

enum class Distribution { binomial, negbinomial };

// Error measure recorded by run_sweep.
enum class SweepMetric {
  relative_x_error,      // |x_asym - x_oracle| / |x_oracle|
  achieved_alpha_error,  // |CDF(x_asym) - alpha| via the reference beta path
};

// Sweep request: one (size, alpha) pair across a p grid.
struct SweepSpec {
  Distribution dist = Distribution::binomial;
  long long size_param = 100;  // n for binomial, r for negbinomial
  double alpha = 0.5;
  std::vector<double> p_grid;  // empty means default_p_grid()
  SweepMetric metric = SweepMetric::relative_x_error;
};

// One sweep result row, in p-grid order.
struct SweepRow {
  double p;
  double x_asym;    // real-valued asymptotic solution before rounding
  double x_oracle;  // real-valued reference solution
  double rel_error;
  bool fallback;
};

// The default grid: 181 points, p = 0.05 (0.005) 0.95.
std::vector<double> default_p_grid();

// Real-valued quantile reference: solves CDF(x) = alpha for real x by
// bracketed bisection on the continued-fraction incomplete beta,
//   binomial:     I_{1-p}(n - x, x + 1) = alpha on (-1, n),
//   negbinomial:  I_p(r, x + 1) = alpha on (-1, inf).
// |x error| <= 1e-9. Throws std::range_error if no bracket exists.
double real_quantile_oracle(Distribution dist, double size, double p,
                            double alpha);

// Runs the asymptotic inversion against the real-valued reference over the
// grid. Rows keep grid order; fallback cases are flagged, not dropped.
// Parallelized with std::thread; the BINV_THREADS environment variable caps
// the thread count (single-threaded results are byte-identical).
std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                const AsymptoticConfig& cfg =
                                    AsymptoticConfig{});

}  // namespace bincdf

#endif  // BINCDF_ORACLE_HPP
