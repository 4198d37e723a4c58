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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "bincdf/binomial.hpp"
#include "bincdf/negbinomial.hpp"
#include "bincdf/oracle.hpp"
#include "bincdf/special.hpp"
#include "doctest.h"

namespace {

double median_of(std::vector<double> v) {
  REQUIRE_FALSE(v.empty());
  size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

}  // namespace

TEST_CASE("default p grid spans 0.05 to 0.95 in steps of 0.005") {
  std::vector<double> grid = bincdf::default_p_grid();
  REQUIRE(grid.size() == 181);
  CHECK(grid.front() == 0.05);
  CHECK(grid.back() == 0.95);
  for (size_t i = 1; i < grid.size(); ++i) {
    CHECK(std::fabs(grid[i] - grid[i - 1] - 0.005) <= 1e-15);
  }
}

TEST_CASE("real quantile reference hits the target CDF") {
  double xb = bincdf::real_quantile_oracle(bincdf::Distribution::binomial,
                                           50.0, 0.4, 0.51);
  CHECK(std::fabs(xb - 19.55330362) <= 1e-6);
  double cb = bincdf::cdf(50, 0.4, xb, bincdf::CdfMethod::beta_ref);
  CHECK(std::fabs(cb - 0.51) <= 1e-8);

  double xn = bincdf::real_quantile_oracle(bincdf::Distribution::negbinomial,
                                           50.0, 0.4, 0.51);
  CHECK(std::fabs(xn - 74.17600808) <= 1e-6);
  double cn = bincdf::inc_beta_ref(0.4, 50.0, xn + 1.0);
  CHECK(std::fabs(cn - 0.51) <= 1e-8);
}

TEST_CASE("integer quantile is the ceiling of the real root") {
  struct Case {
    long long n;
    double p, alpha;
  };
  const Case cases[] = {{50, 0.4, 0.51},  {200, 0.15, 0.05},
                        {200, 0.15, 0.93}, {1000, 0.7, 0.5},
                        {37, 0.5, 0.25}};
  for (const Case& c : cases) {
    CAPTURE(c.n);
    CAPTURE(c.p);
    CAPTURE(c.alpha);
    double xr = bincdf::real_quantile_oracle(
        bincdf::Distribution::binomial, static_cast<double>(c.n), c.p,
        c.alpha);
    long long k = static_cast<long long>(std::ceil(xr));
    CHECK(k == bincdf::quantile_scan_oracle(c.n, c.p, c.alpha));
    CHECK(bincdf::cdf_exact(c.n, c.p, k) >= c.alpha);
    if (k > 0) CHECK(bincdf::cdf_exact(c.n, c.p, k - 1) < c.alpha);
  }
}

TEST_CASE("real quantile reference rejects invalid requests") {
  using bincdf::Distribution;
  CHECK_THROWS_AS(
      bincdf::real_quantile_oracle(Distribution::binomial, 0.0, 0.4, 0.5),
      std::domain_error);
  CHECK_THROWS_AS(
      bincdf::real_quantile_oracle(Distribution::binomial, 50.0, 1.0, 0.5),
      std::domain_error);
  CHECK_THROWS_AS(
      bincdf::real_quantile_oracle(Distribution::binomial, 50.0, 0.4, 1.0),
      std::domain_error);
  CHECK_THROWS_AS(
      bincdf::real_quantile_oracle(Distribution::binomial, 50.0, 0.4, 0.0),
      std::domain_error);
}

TEST_CASE("sweep keeps grid order and flags no fallback on mild settings") {
  bincdf::SweepSpec spec;
  spec.dist = bincdf::Distribution::binomial;
  spec.size_param = 1000;
  spec.alpha = 0.35;
  spec.p_grid = {0.2, 0.4, 0.6, 0.8};
  std::vector<bincdf::SweepRow> rows = bincdf::run_sweep(spec);
  REQUIRE(rows.size() == 4);
  for (size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].p == spec.p_grid[i]);
    CHECK_FALSE(rows[i].fallback);
    CHECK(rows[i].rel_error < 1e-3);
    CHECK(std::fabs(rows[i].x_asym - rows[i].x_oracle) <
          1e-3 * std::max(1.0, rows[i].x_oracle));
  }
}

TEST_CASE("sweep rows are identical across thread counts") {
  bincdf::SweepSpec spec;
  spec.dist = bincdf::Distribution::binomial;
  spec.size_param = 500;
  spec.alpha = 0.6;
  setenv("BINV_THREADS", "1", 1);
  std::vector<bincdf::SweepRow> one = bincdf::run_sweep(spec);
  setenv("BINV_THREADS", "4", 1);
  std::vector<bincdf::SweepRow> four = bincdf::run_sweep(spec);
  unsetenv("BINV_THREADS");
  REQUIRE(one.size() == four.size());
  REQUIRE(one.size() == 181);
  for (size_t i = 0; i < one.size(); ++i) {
    CAPTURE(i);
    CHECK(one[i].p == four[i].p);
    CHECK(one[i].x_asym == four[i].x_asym);
    CHECK(one[i].x_oracle == four[i].x_oracle);
    CHECK(one[i].rel_error == four[i].rel_error);
    CHECK(one[i].fallback == four[i].fallback);
  }
}

TEST_CASE("sweep error shrinks as the size parameter grows") {
  bincdf::SweepSpec small;
  small.size_param = 100;
  small.alpha = 0.35;
  bincdf::SweepSpec large = small;
  large.size_param = 1000;
  std::vector<double> es, el;
  for (const bincdf::SweepRow& r : bincdf::run_sweep(small)) {
    if (!r.fallback) es.push_back(r.rel_error);
  }
  for (const bincdf::SweepRow& r : bincdf::run_sweep(large)) {
    if (!r.fallback) el.push_back(r.rel_error);
  }
  CHECK(median_of(el) < median_of(es));
}

TEST_CASE("achieved alpha metric stays near the target") {
  bincdf::SweepSpec spec;
  spec.size_param = 1000;
  spec.alpha = 0.5;
  spec.p_grid = {0.25, 0.5, 0.75};
  spec.metric = bincdf::SweepMetric::achieved_alpha_error;
  for (const bincdf::SweepRow& r : bincdf::run_sweep(spec)) {
    CAPTURE(r.p);
    CHECK_FALSE(r.fallback);
    CHECK(r.rel_error < 1e-5);
  }
}

TEST_CASE("negative binomial sweep matches the pinned reference") {
  bincdf::SweepSpec spec;
  spec.dist = bincdf::Distribution::negbinomial;
  spec.size_param = 50;
  spec.alpha = 0.51;
  spec.p_grid = {0.3, 0.4, 0.5};
  std::vector<bincdf::SweepRow> rows = bincdf::run_sweep(spec);
  REQUIRE(rows.size() == 3);
  CHECK(std::fabs(rows[1].x_oracle - 74.17600808) <= 1e-4);
  for (const bincdf::SweepRow& r : rows) CHECK_FALSE(r.fallback);
}

TEST_CASE("sweep rejects invalid requests") {
  bincdf::SweepSpec spec;
  spec.size_param = 0;
  CHECK_THROWS_AS(bincdf::run_sweep(spec), std::domain_error);
  spec.size_param = 100;
  spec.alpha = 1.0;
  CHECK_THROWS_AS(bincdf::run_sweep(spec), std::domain_error);
  spec.alpha = 0.5;
  spec.p_grid = {0.5, 0.0};
  CHECK_THROWS_AS(bincdf::run_sweep(spec), std::domain_error);
}
