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
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bincdf/binomial.hpp"
#include "bincdf/binomial_inv.hpp"
#include "bincdf/special.hpp"
#include "bincdf/negbinomial.hpp"
#include "bincdf/oracle.hpp"

namespace {

// Shortest locale-independent representation with up to 17 significant
// digits; byte deterministic across runs and platforms.
std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct Args {
  std::string dist = "binomial";
  long long n = 0;
  double r = 0.0;
  bool has_n = false;
  bool has_r = false;
  double p = 0.0;
  double x = 0.0;
  double alpha = 0.0;
  bool verbose = false;
  // sweep
  double p_min = 0.05;
  double p_max = 0.95;
  double p_step = 0.005;
  std::string metric = "x-rel";
  std::string format = "text";
  std::string out_path;
  // bench
  std::vector<long long> sizes;
  int reps = 1000;
  double bench_p = 0.4;
};

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

bool is_negbinomial(const Args& a) { return a.dist == "negbinomial"; }

// Returns 0 on success or 2 on a structural inconsistency between --dist
// and the size flags.
int check_size_flags(const Args& a) {
  if (is_negbinomial(a)) {
    if (!a.has_r) return usage_error("--dist negbinomial requires --r");
    if (a.has_n) return usage_error("--n is only valid with --dist binomial");
  } else {
    if (!a.has_n) return usage_error("--dist binomial requires --n");
    if (a.has_r) {
      return usage_error("--r is only valid with --dist negbinomial");
    }
  }
  return 0;
}

int run_cdf(const Args& a) {
  if (int rc = check_size_flags(a); rc != 0) return rc;
  double value;
  bool integral = std::floor(a.x) == a.x;
  if (is_negbinomial(a)) {
    if (integral) {
      bincdf::NbExactCdfInfo info = bincdf::nb_cdf_exact_info(
          a.r, a.p, static_cast<long long>(a.x));
      value = info.value;
      if (a.verbose) {
        std::cout << "value = " << fmt(value) << "\n"
                  << "method = exact-window\n"
                  << "branch = " << (info.upper_branch ? "survival" : "lower")
                  << "\n"
                  << "terms = " << info.terms << "\n";
        return 0;
      }
    } else {
      value = bincdf::inc_beta_ref(a.p, a.r, a.x + 1.0);
      if (a.verbose) {
        std::cout << "value = " << fmt(value) << "\n"
                  << "method = beta-ref\n";
        return 0;
      }
    }
  } else {
    if (integral) {
      bincdf::ExactCdfInfo info = bincdf::cdf_exact_info(
          a.n, a.p, static_cast<long long>(a.x));
      value = info.value;
      if (a.verbose) {
        std::cout << "value = " << fmt(value) << "\n"
                  << "method = exact-window\n"
                  << "branch = " << (info.upper_branch ? "survival" : "lower")
                  << "\n"
                  << "terms = " << info.terms << "\n";
        return 0;
      }
    } else {
      value = bincdf::cdf(a.n, a.p, a.x, bincdf::CdfMethod::beta_ref);
      if (a.verbose) {
        std::cout << "value = " << fmt(value) << "\n"
                  << "method = beta-ref\n";
        return 0;
      }
    }
  }
  std::cout << fmt(value) << "\n";
  return 0;
}

int run_quantile(const Args& a) {
  if (int rc = check_size_flags(a); rc != 0) return rc;
  bincdf::InversionResult res;
  if (is_negbinomial(a)) {
    res = bincdf::nb_invert(a.r, a.p, a.alpha);
  } else {
    res = bincdf::invert(a.n, a.p, a.alpha);
  }
  if (!a.verbose) {
    std::cout << res.x_int << "\n";
    return 0;
  }
  std::cout << "x = " << res.x_int << "\n"
            << "x_real = " << fmt(res.x_real) << "\n"
            << "eta0 = " << fmt(res.eta0) << "\n"
            << "eta1 = " << fmt(res.eta1) << "\n"
            << "xi0 = " << fmt(res.xi0) << "\n"
            << "xi = " << fmt(res.xi) << "\n"
            << "achieved_cdf = " << fmt(res.achieved_cdf) << "\n"
            << "refinement_steps = " << res.refinement_steps << "\n"
            << "path = " << (res.fallback_used ? "bisection" : "asymptotic")
            << "\n";
  return 0;
}

int run_sweep(const Args& a) {
  if (int rc = check_size_flags(a); rc != 0) return rc;
  if (!(a.p_step > 0.0) || !(a.p_min > 0.0) || !(a.p_max < 1.0) ||
      !(a.p_min <= a.p_max)) {
    return usage_error("sweep grid must satisfy 0 < p-min <= p-max < 1 and "
                       "p-step > 0");
  }
  bincdf::SweepSpec spec;
  spec.dist = is_negbinomial(a) ? bincdf::Distribution::negbinomial
                                : bincdf::Distribution::binomial;
  spec.size_param = is_negbinomial(a) ? static_cast<long long>(a.r) : a.n;
  spec.alpha = a.alpha;
  spec.metric = a.metric == "alpha-abs"
                    ? bincdf::SweepMetric::achieved_alpha_error
                    : bincdf::SweepMetric::relative_x_error;
  int count = static_cast<int>(
      std::floor((a.p_max - a.p_min) / a.p_step + 1e-9)) + 1;
  spec.p_grid.reserve(count);
  for (int i = 0; i < count; ++i) {
    spec.p_grid.push_back(a.p_min + i * a.p_step);
  }
  std::vector<bincdf::SweepRow> rows = bincdf::run_sweep(spec);

  std::string dist_name = is_negbinomial(a) ? "negbinomial" : "binomial";
  if (a.format == "csv") {
    std::string body = "distribution,size_param,alpha,p,x_asym,x_oracle,"
                       "rel_error,fallback\n";
    for (const bincdf::SweepRow& row : rows) {
      body += dist_name;
      body += ',';
      body += std::to_string(spec.size_param);
      body += ',';
      body += fmt(spec.alpha);
      body += ',';
      body += fmt(row.p);
      body += ',';
      body += fmt(row.x_asym);
      body += ',';
      body += fmt(row.x_oracle);
      body += ',';
      body += fmt(row.rel_error);
      body += ',';
      body += row.fallback ? '1' : '0';
      body += '\n';
    }
    if (a.out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(a.out_path, std::ios::binary);
      if (!out) return usage_error("cannot open output file " + a.out_path);
      out << body;
    }
    return 0;
  }
  std::vector<double> errs;
  errs.reserve(rows.size());
  std::printf("%10s %18s %18s %14s %s\n", "p", "x_asym", "x_oracle",
              "rel_error", "fallback");
  for (const bincdf::SweepRow& row : rows) {
    std::printf("%10.4f %18.8f %18.8f %14.6e %8s\n", row.p, row.x_asym,
                row.x_oracle, row.rel_error, row.fallback ? "yes" : "no");
    if (!row.fallback) errs.push_back(row.rel_error);
  }
  if (!errs.empty()) {
    std::sort(errs.begin(), errs.end());
    double median = errs[errs.size() / 2];
    std::printf("# non-fallback rows: %zu, median rel_error: %.6e\n",
                errs.size(), median);
  }
  return 0;
}

int run_bench(const Args& a) {
  std::vector<long long> sizes = a.sizes;
  if (sizes.empty()) sizes = {100, 10000, 1000000};
  bool nb = is_negbinomial(a);
  std::printf("%-12s %10s %8s %14s\n", "distribution", "size", "reps",
              "median_ns");
  for (long long size : sizes) {
    if (size < 1) return usage_error("--sizes entries must be >= 1");
    std::vector<double> ns;
    ns.reserve(a.reps);
    for (int i = 0; i < a.reps; ++i) {
      double alpha =
          0.2 + 0.6 * (a.reps > 1 ? static_cast<double>(i) / (a.reps - 1)
                                  : 0.5);
      auto t0 = std::chrono::steady_clock::now();
      if (nb) {
        bincdf::nb_invert(static_cast<double>(size), a.bench_p, alpha);
      } else {
        bincdf::invert(size, a.bench_p, alpha);
      }
      auto t1 = std::chrono::steady_clock::now();
      ns.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
    }
    std::sort(ns.begin(), ns.end());
    std::printf("%-12s %10lld %8d %14.0f\n", nb ? "negbinomial" : "binomial",
                size, a.reps, ns[ns.size() / 2]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Args args;
  CLI::App app{"binomial and negative binomial CDFs and quantiles via "
               "uniform asymptotics with exact refinement"};
  app.require_subcommand(1);
  app.add_flag("--verbose,-v", args.verbose, "print diagnostics");

  auto prob_open = CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || !(v > 0.0) || !(v < 1.0)) {
          return "value " + s + " not in the open interval (0, 1)";
        }
        return {};
      },
      "FLOAT in (0,1)", "prob_open");
  auto alpha_range = CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || !(v > 0.0) || !(v <= 1.0)) {
          return "value " + s + " not in the interval (0, 1]";
        }
        return {};
      },
      "FLOAT in (0,1]", "alpha_range");
  auto alpha_open = CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || !(v > 0.0) || !(v < 1.0)) {
          return "value " + s + " not in the open interval (0, 1)";
        }
        return {};
      },
      "FLOAT in (0,1)", "alpha_open");

  const std::vector<std::string> dists = {"binomial", "negbinomial"};

  CLI::App* cdf = app.add_subcommand("cdf", "evaluate P(X <= x)");
  cdf->add_option("--dist", args.dist, "distribution")
      ->check(CLI::IsMember(dists));
  cdf->add_option("--n", args.n, "binomial trial count (>= 1)")
      ->check(CLI::Range(1LL, 4000000000000000000LL));
  cdf->add_option("--r", args.r, "negative binomial size (> 0, real)")
      ->check(CLI::PositiveNumber);
  cdf->add_option("--p", args.p, "success probability")
      ->required()
      ->check(prob_open);
  cdf->add_option("--x", args.x, "evaluation point (>= 0; real x uses the "
                                 "beta path)")
      ->required()
      ->check(CLI::NonNegativeNumber);

  CLI::App* quant = app.add_subcommand("quantile",
                                       "smallest x with P(X <= x) >= alpha");
  quant->add_option("--dist", args.dist, "distribution")
      ->check(CLI::IsMember(dists));
  quant->add_option("--n", args.n, "binomial trial count (>= 1)")
      ->check(CLI::Range(1LL, 4000000000000000000LL));
  quant->add_option("--r", args.r,
                    "negative binomial size (> 0 real; inversion needs >= 1)")
      ->check(CLI::PositiveNumber);
  quant->add_option("--p", args.p, "success probability")
      ->required()
      ->check(prob_open);
  quant->add_option("--alpha", args.alpha, "target CDF level in (0, 1]")
      ->required()
      ->check(alpha_range);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "compare asymptotic inversion with the reference over a "
               "p grid");
  sweep->add_option("--dist", args.dist, "distribution")
      ->check(CLI::IsMember(dists));
  sweep->add_option("--n", args.n, "binomial trial count (>= 1)")
      ->check(CLI::Range(1LL, 4000000000000000000LL));
  sweep->add_option("--r", args.r, "negative binomial size (>= 1)")
      ->check(CLI::Range(1.0, 1e18));
  sweep->add_option("--alpha", args.alpha, "target CDF level in (0, 1)")
      ->required()
      ->check(alpha_open);
  sweep->add_option("--p-min", args.p_min, "grid start (default 0.05)")
      ->check(prob_open);
  sweep->add_option("--p-max", args.p_max, "grid end (default 0.95)")
      ->check(prob_open);
  sweep->add_option("--p-step", args.p_step, "grid step (default 0.005)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--metric", args.metric, "error metric")
      ->check(CLI::IsMember({"x-rel", "alpha-abs"}));
  sweep->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "csv"}));
  sweep->add_option("--out", args.out_path, "write CSV to this file");

  CLI::App* bench = app.add_subcommand("bench",
                                       "time quantile inversions per size");
  bench->add_option("--dist", args.dist, "distribution")
      ->check(CLI::IsMember(dists));
  bench->add_option("--sizes", args.sizes,
                    "comma separated size list (default 100,10000,1000000)")
      ->delimiter(',');
  bench->add_option("--reps", args.reps, "calls per size (default 1000)")
      ->check(CLI::Range(1, 10000000));
  bench->add_option("--p", args.bench_p, "success probability (default 0.4)")
      ->check(prob_open);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  args.has_n = cdf->count("--n") > 0 || quant->count("--n") > 0 ||
               sweep->count("--n") > 0;
  args.has_r = cdf->count("--r") > 0 || quant->count("--r") > 0 ||
               sweep->count("--r") > 0;

  try {
    if (app.got_subcommand(cdf)) return run_cdf(args);
    if (app.got_subcommand(quant)) return run_quantile(args);
    if (app.got_subcommand(sweep)) return run_sweep(args);
    return run_bench(args);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::range_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
