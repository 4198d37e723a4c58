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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "bincdf/binomial.hpp"
#include "bincdf/special.hpp"
#include "doctest.h"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args) {
  static int seq = 0;
  std::string base = "/tmp/bincdf_cli_" + std::to_string(::getpid()) + "_" +
                     std::to_string(seq++);
  std::string out_path = base + ".out";
  std::string err_path = base + ".err";
  std::string cmd = std::string("\"") + BINCDF_CLI_PATH + "\" " + args +
                    " >" + out_path + " 2>" + err_path;
  int rc = std::system(cmd.c_str());
  RunResult res;
  res.code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return res;
}

// Extracts the number following "<key> = " in a verbose report.
double field(const std::string& text, const std::string& key) {
  std::string tag = key + " = ";
  size_t pos = text.find(tag);
  REQUIRE(pos != std::string::npos);
  return std::strtod(text.c_str() + pos + tag.size(), nullptr);
}

size_t count_lines(const std::string& text) {
  size_t n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("quantile prints the bare integer on success") {
  RunResult r = run_cli("quantile --dist binomial --n 50 --p 0.4 "
                        "--alpha 0.51");
  CHECK(r.code == 0);
  CHECK(r.out == "20\n");
  CHECK(r.err.empty());

  RunResult nb = run_cli("quantile --dist negbinomial --r 50 --p 0.4 "
                         "--alpha 0.51");
  CHECK(nb.code == 0);
  CHECK(nb.out == "75\n");
}

TEST_CASE("verbose quantile reports the inversion chain") {
  RunResult r = run_cli("-v quantile --dist binomial --n 50 --p 0.4 "
                        "--alpha 0.51");
  CHECK(r.code == 0);
  CHECK(r.out.find("x = 20\n") != std::string::npos);
  CHECK(r.out.find("path = asymptotic") != std::string::npos);
  CHECK(std::fabs(field(r.out, "x_real") - 19.5536801) <= 1e-6);
  CHECK(std::fabs(field(r.out, "eta0") - (-0.0035103493)) <= 1e-9);
  CHECK(std::fabs(field(r.out, "eta1") - (-0.13454022)) <= 1e-7);
  CHECK(std::fabs(field(r.out, "xi") - 0.40301334) <= 1e-7);
  CHECK(std::fabs(field(r.out, "achieved_cdf") - 0.56103493204006594) <=
        1e-15);
  CHECK(r.out.find("refinement_steps = ") != std::string::npos);
}

TEST_CASE("cdf evaluates integer points with the exact window") {
  RunResult r = run_cli("cdf --dist binomial --n 50 --p 0.4 --x 20");
  CHECK(r.code == 0);
  double v = std::strtod(r.out.c_str(), nullptr);
  CHECK(std::fabs(v - bincdf::cdf_exact(50, 0.4, 20)) <= 1e-16);

  RunResult verbose = run_cli("-v cdf --dist binomial --n 50 --p 0.4 --x 20");
  CHECK(verbose.code == 0);
  CHECK(verbose.out.find("method = exact-window") != std::string::npos);
  CHECK(verbose.out.find("branch = ") != std::string::npos);
  CHECK(verbose.out.find("terms = ") != std::string::npos);
}

TEST_CASE("cdf interpolates real points through the reference beta") {
  RunResult r = run_cli("-v cdf --dist binomial --n 50 --p 0.4 --x 19.5");
  CHECK(r.code == 0);
  CHECK(r.out.find("method = beta-ref") != std::string::npos);
  double v = field(r.out, "value");
  CHECK(v > bincdf::cdf_exact(50, 0.4, 19));
  CHECK(v < bincdf::cdf_exact(50, 0.4, 20));
}

TEST_CASE("cdf accepts a real shape parameter") {
  RunResult r = run_cli("cdf --dist negbinomial --r 7.5 --p 0.6 --x 3");
  CHECK(r.code == 0);
  double v = std::strtod(r.out.c_str(), nullptr);
  CHECK(std::fabs(v - bincdf::inc_beta_ref(0.6, 7.5, 4.0)) <= 1e-15);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("quantile --dist binomial --n 50 --p 0.4 --alpha 1.5").code ==
        2);
  CHECK(run_cli("quantile --dist binomial --n 50 --alpha 0.5").code == 2);
  RunResult mixed = run_cli("quantile --dist negbinomial --n 50 --p 0.4 "
                            "--alpha 0.5");
  CHECK(mixed.code == 2);
  CHECK(mixed.err.find("error:") != std::string::npos);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("cdf --dist binomial --n 50 --p 1.0 --x 3").code == 2);
}

TEST_CASE("library precondition violations exit with code 1") {
  RunResult r = run_cli("quantile --dist negbinomial --r 0.5 --p 0.4 "
                        "--alpha 0.5");
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(r.err.find("at least 1") != std::string::npos);
  CHECK(count_lines(r.err) == 1);
}

TEST_CASE("sweep emits deterministic CSV") {
  std::string args = "sweep --dist binomial --n 200 --alpha 0.35 "
                     "--p-min 0.2 --p-max 0.4 --p-step 0.05 --format csv";
  RunResult a = run_cli(args);
  CHECK(a.code == 0);
  REQUIRE(!a.out.empty());
  std::istringstream lines(a.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "distribution,size_param,alpha,p,x_asym,x_oracle,rel_error,fallback");
  CHECK(count_lines(a.out) == 6);
  std::string row;
  std::getline(lines, row);
  // Numbers carry 17 significant digits so they round-trip as doubles.
  CHECK(row.rfind("binomial,200,0.34999999999999998,0.20000000000000001,", 0) ==
        0);
  CHECK((row.back() == '0' || row.back() == '1'));

  RunResult b = run_cli(args);
  CHECK(a.out == b.out);
}

TEST_CASE("sweep writes the same CSV bytes to a file") {
  std::string path = "/tmp/bincdf_sweep_" + std::to_string(::getpid()) +
                     ".csv";
  std::string base = "sweep --dist negbinomial --r 50 --alpha 0.51 "
                     "--p-min 0.3 --p-max 0.5 --p-step 0.1 --format csv";
  RunResult to_stdout = run_cli(base);
  RunResult to_file = run_cli(base + " --out " + path);
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  CHECK(slurp(path) == to_stdout.out);
  CHECK(count_lines(to_stdout.out) == 4);
  std::remove(path.c_str());
}

TEST_CASE("sweep text format summarizes the error median") {
  RunResult r = run_cli("sweep --dist binomial --n 100 --alpha 0.5 "
                        "--p-min 0.3 --p-max 0.5 --p-step 0.1");
  CHECK(r.code == 0);
  CHECK(r.out.find("x_asym") != std::string::npos);
  CHECK(r.out.find("median rel_error") != std::string::npos);
}

TEST_CASE("bench reports a median per size") {
  RunResult r = run_cli("bench --sizes 100,1000 --reps 5 --p 0.4");
  CHECK(r.code == 0);
  CHECK(r.out.find("median_ns") != std::string::npos);
  CHECK(r.out.find("binomial") != std::string::npos);
  CHECK(count_lines(r.out) == 3);
}
