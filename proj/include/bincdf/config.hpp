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

#ifndef BINCDF_CONFIG_HPP
#define BINCDF_CONFIG_HPP

namespace bincdf {

// Tuning knobs for the asymptotic evaluation and inversion paths.
// All values are validated by validate(); the defaults are the tested
// configuration and satisfy every accuracy contract in the test suite.
struct AsymptoticConfig {
  // Truncation order of the diagnostic F_k series for F_nu(infinity).
  // The exact gamma-star ratio is always used in computations.
  int max_Fk_terms = 3;
  // Number of C_k correction terms in the R_nu tail (C_0 .. C_{K-1}).
  int max_Ck_terms = 2;
  // |eta/lambda| below which Taylor-series paths replace direct formulas
  // that would hit removable singularities.
  double taylor_switch_radius = 0.2;
  // Newton iteration controls shared by all scalar solves.
  double newton_tol = 1e-13;
  int newton_max_iter = 64;

  // Fallback thresholds.
  // Cap on the scaled series variables (|eta~|, |rho~|) for using the pinned
  // coefficient tables as solver starting values.
  double series_radius_guard = 0.5;
  // |eta0| below which the eta1 perturbation term uses its series form.
  double eta1_series_switch = 0.1;
  // nu above which integer refinement probes use the asymptotic beta path;
  // at or below it every probe is an exact windowed sum.
  double exact_probe_nu_max = 1e5;
  // If an asymptotic probe lands within this band of the target alpha the
  // probe is recomputed exactly; keeps the minimality contract exact.
  double probe_error_band = 1e-8;
  // xi within [delta, 1-delta] is the trusted uniformity strip; outside it
  // asymptotic results carry a warning flag (values are still returned).
  double uniformity_delta = 0.05;

  // Throws std::domain_error on any out-of-range field.
  void validate() const;
};

}  // namespace bincdf

#endif  // BINCDF_CONFIG_HPP
