/*
   Copyright 2026 The kaclab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "kac/coeff_models.hpp"
#include "kac/errors.hpp"
#include "kac/horner.hpp"
#include "kac/polynomial.hpp"
#include "oracles.hpp"

using kac::Complex;
using kac::Polynomial;
using kac::RandomStream;

namespace {

Polynomial random_poly(const kac::CoefficientModel& m, std::size_t n, std::uint64_t seed) {
  RandomStream s(seed, 0);
  return Polynomial(kac::sample_coefficients(m, s, n + 1));
}

std::vector<double> sorted_moduli(std::span<const Complex> z) {
  std::vector<double> out;
  for (const auto& v : z) out.push_back(std::abs(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("construction validates the coefficient vector") {
  CHECK_THROWS_AS(Polynomial({}), kac::Error);
  CHECK_THROWS_AS(Polynomial({1.0, 0.0}), kac::Error);
  CHECK_THROWS_AS(Polynomial({1.0, Complex(NAN, 0.0)}), kac::Error);
  CHECK_THROWS_AS(Polynomial({1.0, 1e-320}), kac::Error);
  const Polynomial p({Complex(0.3, -0.7), 2.0, 1.0});
  CHECK(p.degree() == 2);
  CHECK(p(0.0) == Complex(0.3, -0.7));
}

TEST_CASE("horner variants agree with a long double evaluation") {
  RandomStream s(1, 0);
  const auto c = kac::sample_coefficients(kac::CoefficientModel::complex_gaussian(), s, 60);
  for (const Complex z : {Complex(0.3, 0.4), Complex(-0.99, 0.1), Complex(0.7, -0.7)}) {
    const auto ref = oracle::horner_ld(c, {z.real(), z.imag()});
    const Complex r(double(ref.real()), double(ref.imag()));
    const double scale = kac::horner_abs(c, std::abs(z));
    CHECK(std::abs(kac::horner(c, z) - r) < 1e-14 * scale);
    CHECK(std::abs(kac::horner_compensated(c, z) - r) < 1e-15 * std::abs(r) + 1e-300);
    const auto hv = kac::horner_with_derivative(c, z);
    CHECK(hv.value == kac::horner(c, z));
  }
}

TEST_CASE("compensated horner resolves a tenfold root") {
  // (z - 1)^10 expanded exactly.
  std::vector<Complex> c(11);
  double binom = 1.0;
  for (int k = 0; k <= 10; ++k) {
    c[k] = ((10 - k) % 2 ? -1.0 : 1.0) * binom;
    binom = binom * (10 - k) / (k + 1);
  }
  const double u = std::numeric_limits<double>::epsilon() / 2.0;
  const double gamma = 2.0 * 10 * u / (1.0 - 2.0 * 10 * u);
  for (const Complex z : {Complex(1.01, 0.0), Complex(1.0, 0.01), Complex(1.0001, 0.0), Complex(1.0, 1e-3)}) {
    const Complex exact = std::pow(z - 1.0, 10);
    const Complex comp = kac::horner_compensated(c, z);
    const Complex plain = kac::horner(c, z);
    // A priori bound: u|p| + gamma_{2n}^2 * sum |c_k| |z|^k, with slack for complex products.
    const double bound = u * std::abs(exact) + 16.0 * gamma * gamma * kac::horner_abs(c, std::abs(z));
    CAPTURE(z);
    CHECK(std::abs(comp - exact) <= bound);
    CHECK(std::abs(plain - exact) > std::abs(comp - exact));
    // Condition below 1/u^2: twice-working precision gives real digits.
    if (std::abs(z - 1.0) >= 0.01) CHECK(std::abs(comp - exact) <= 1e-6 * std::abs(exact));
  }
}

TEST_CASE("small solves") {
  auto r = kac::solve(Polynomial({-1.0, 0.0, 1.0}));
  REQUIRE(r.size() == 2);
  auto m = sorted_moduli(r.roots);
  std::sort(r.roots.begin(), r.roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(r.roots[0] + 1.0) < 1e-15);
  CHECK(std::abs(r.roots[1] - 1.0) < 1e-15);
  CHECK(r.worst_residual() < 1e-15);
  const auto lin = kac::solve(Polynomial({1.0, 1.0}));
  REQUIRE(lin.size() == 1);
  CHECK(lin.roots[0] == Complex(-1.0, 0.0));
  CHECK_THROWS_AS(kac::solve(Polynomial({1.0})), kac::Error);
  const auto zero_root = kac::solve(Polynomial({0.0, 0.0, -4.0, 0.0, 1.0}));
  CHECK(std::count(zero_root.roots.begin(), zero_root.roots.end(), Complex(0.0)) == 2);
}

TEST_CASE("ten equally spaced real roots") {
  std::vector<Complex> truth;
  for (int j = 1; j <= 10; ++j) truth.push_back(j / 10.0);
  const auto ld = oracle::expand_roots(truth);
  std::vector<Complex> c;
  for (const auto& v : ld) c.emplace_back(double(v.real()), double(v.imag()));
  const auto r = kac::solve(Polynomial(c));
  CHECK(oracle::matched_max_distance(r.roots, truth) < 1e-8);
}

TEST_CASE("solve matches companion eigenvalues and reconstructs coefficients") {
  const std::vector<kac::CoefficientModel> models = {
      kac::CoefficientModel::complex_gaussian(), kac::CoefficientModel::real_gaussian(),
      kac::CoefficientModel::exponential_real(), kac::CoefficientModel::cauchy(),
      kac::CoefficientModel::uniform_annulus(1.0, 2.0)};
  std::uint64_t seed = 0;
  for (const auto& m : models) {
    for (std::size_t n : {3u, 8u, 20u, 40u, 64u}) {
      const auto p = random_poly(m, n, seed++);
      const auto r = kac::solve(p);
      REQUIRE(r.size() == n);
      CHECK(r.worst_residual() <= 1e-10);
      const auto eig = oracle::companion_roots(p.coeffs());
      CAPTURE(m.to_string());
      CAPTURE(n);
      CHECK(oracle::matched_max_distance(r.roots, eig) < 1e-7);
      // c_n prod (z - z_k) against the input, relative max norm.
      const double rel = oracle::reconstruction_error(p.coeffs(), r.roots);
      CAPTURE(rel);
      CHECK(rel <= 1e-8);
    }
  }
}

TEST_CASE("large Kac degrees certify and respect the Cauchy bound") {
  for (std::size_t n : {300u, 500u, 1000u}) {
    const auto p = random_poly(kac::CoefficientModel::complex_gaussian(), n, n);
    const auto r = kac::solve(p);
    REQUIRE(r.size() == n);
    CHECK(r.worst_residual() <= 1e-10);
    double cmax = 0.0;
    for (const auto& c : p.coeffs()) cmax = std::max(cmax, std::abs(c));
    for (const auto& z : r.roots) REQUIRE(std::abs(z) <= 1.0 + cmax / std::abs(p.leading()));
  }
}

TEST_CASE("solve is deterministic") {
  const auto p = random_poly(kac::CoefficientModel::complex_gaussian(), 300, 9);
  const auto a = kac::solve(p);
  const auto b = kac::solve(p);
  CHECK(a.roots == b.roots);
  CHECK(a.residuals == b.residuals);
}

TEST_CASE("sweep budget exhaustion raises NonConvergence with the worst residual") {
  const auto p = random_poly(kac::CoefficientModel::complex_gaussian(), 80, 4);
  kac::SolveOptions opts;
  opts.max_sweeps = 1;
  try {
    kac::solve(p, opts);
    FAIL("expected NonConvergenceError");
  } catch (const kac::NonConvergenceError& e) {
    CHECK(e.code() == kac::ErrorCode::NonConvergence);
    CHECK(e.worst_residual() > opts.certification_threshold);
  }
}

TEST_CASE("reversal") {
  const Polynomial p({2.0, 3.0, 1.0});
  const auto q = kac::reverse(p);
  CHECK(q == Polynomial({1.0, 3.0, 2.0}));
  auto roots = kac::solve(q).roots;
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] + 1.0) < 1e-14);
  CHECK(std::abs(roots[1] + 0.5) < 1e-14);
  const Polynomial pal({1.0, 5.0, 1.0});
  CHECK(kac::reverse(pal) == pal);
  const auto r = random_poly(kac::CoefficientModel::complex_gaussian(), 30, 77);
  CHECK(kac::reverse(kac::reverse(r)) == r);
  CHECK_THROWS_AS(kac::reverse(Polynomial({0.0, 1.0})), kac::Error);
}

TEST_CASE("reciprocal-root property") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = random_poly(kac::CoefficientModel::complex_gaussian(), 100, 1000 + seed);
    const auto a = sorted_moduli(kac::solve(p).roots);
    auto b = sorted_moduli(kac::solve(kac::reverse(p)).roots);
    for (auto& v : b) v = 1.0 / v;
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(a[i] - b[i]) < 1e-8 * std::max(1.0, a[i]));
  }
}

TEST_CASE("annulus coefficients keep roots in [1/3, 3]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = random_poly(kac::CoefficientModel::uniform_annulus(1.0, 2.0), 200, seed);
    for (const auto& z : kac::solve(p).roots) {
      REQUIRE(std::abs(z) >= 1.0 / 3.0);
      REQUIRE(std::abs(z) <= 3.0);
    }
  }
}

TEST_CASE("scale invariance") {
  const auto p = random_poly(kac::CoefficientModel::complex_gaussian(), 50, 5);
  const auto base = kac::solve(p).roots;
  for (double lambda : {1e-3, 1.0, 1e3}) {
    const auto r = kac::solve(p.scaled(lambda)).roots;
    CHECK(oracle::matched_max_distance(r, base) < 1e-9);
  }
}

TEST_CASE("backward stability under coefficient perturbation") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = random_poly(kac::CoefficientModel::complex_gaussian(), 50, 300 + seed);
    const auto r = kac::solve(p);
    RandomStream s(seed, 99);
    std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
    for (auto& v : c) v *= 1.0 + 1e-12 * (2.0 * s.uniform() - 1.0);
    const auto r2 = kac::solve(Polynomial(c));
    // First-order root motion: |dz| <= sum |dc_j||z|^j / |P'(z)|, with slack for the solve itself.
    for (const auto& z : r.roots) {
      const auto hv = kac::horner_with_derivative(p.coeffs(), z);
      const double bound = 1e-12 * kac::horner_abs(p.coeffs(), std::abs(z)) / std::abs(hv.derivative);
      double nearest = INFINITY;
      for (const auto& w : r2.roots) nearest = std::min(nearest, std::abs(w - z));
      REQUIRE(nearest <= 4.0 * bound + 1e-13 * (1.0 + std::abs(z)));
    }
  }
}

TEST_CASE("disk counting agrees with the argument principle") {
  const Polynomial p({-1.0, 0.0, 1.0});
  CHECK(kac::count_zeros_in_disk(p, 0.0, 1.5) == 2);
  CHECK(kac::count_zeros_in_disk(p, 0.0, 0.5) == 0);
  CHECK(kac::count_zeros_in_disk(p, 1.0, 0.5) == 1);
  CHECK_THROWS_AS(kac::count_zeros_in_disk(p, 0.0, 1.0), kac::Error);
  const auto q = random_poly(kac::CoefficientModel::complex_gaussian(), 20, 123);
  const int solved = kac::count_zeros_in_disk(q, 0.0, 0.8);
  CHECK(solved == kac::argument_principle_count(q, 0.0, 0.8));
  int direct = 0;
  for (const auto& z : kac::solve(q).roots) direct += std::abs(z) < 0.8;
  CHECK(solved == direct);
}

TEST_CASE("polynomial and root I/O") {
  const auto p = random_poly(kac::CoefficientModel::complex_gaussian(), 7, 8);
  std::stringstream ss;
  kac::write_polynomial(ss, p);
  std::stringstream in("# comment\n" + ss.str());
  CHECK(kac::read_polynomial(in) == p);
  std::stringstream bad("1 2\nx y\n");
  CHECK_THROWS_AS(kac::read_polynomial(bad), kac::Error);
  std::stringstream csv;
  kac::write_roots_csv(csv, kac::solve(p));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "re,im,modulus,residual");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 7);
}
