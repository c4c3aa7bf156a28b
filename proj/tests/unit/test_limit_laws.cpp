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

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "kac/errors.hpp"
#include "kac/limit_laws.hpp"
#include "kac/rng.hpp"
#include "oracles.hpp"

using kac::LimitCdfEvaluator;

TEST_CASE("limit cdf values") {
  CHECK(kac::limit_cdf(0.0) == 0.0);
  const double ref = double(oracle::limit_cdf_ld(0.5L, 64));
  CHECK(std::abs(kac::limit_cdf(0.5, 1e-12) - ref) < 1e-12);
  CHECK(kac::limit_cdf(0.5) == doctest::Approx(0.3115).epsilon(1e-3));
  CHECK(kac::limit_cdf(0.3) < kac::limit_cdf(0.6));
  CHECK(kac::limit_cdf(0.999) > 1.0 - 1e-10);
  CHECK_THROWS_AS(kac::limit_cdf(1.0), kac::Error);
  CHECK_THROWS_AS(kac::limit_cdf(-0.1), kac::Error);
  CHECK_THROWS_AS(LimitCdfEvaluator(0.0), kac::Error);
}

TEST_CASE("limit cdf against the long double product on a grid") {
  for (int i = 1; i < 100; ++i) {
    const double t = i / 100.0;
    const int terms = 20000;
    REQUIRE(std::abs(kac::limit_cdf(t) - double(oracle::limit_cdf_ld(t, terms))) < 2e-14);
  }
}

TEST_CASE("truncation order meets its bound") {
  const LimitCdfEvaluator eval(1e-12);
  for (double t : {0.1, 0.5, 0.9, 0.99}) {
    const auto k = eval.truncation_order(t);
    const double x = t * t;
    CHECK(std::pow(x, k + 1) / (1 - x) <= 1e-12);
    if (k > 0) CHECK(std::pow(x, k) / (1 - x) > 1e-12);
  }
  CHECK(eval.truncation_order(0.0) == 0);
}

TEST_CASE("truncation soundness across budgets") {
  for (int i = 1; i < 1000; ++i) {
    const double t = i / 1000.0;
    REQUIRE(std::abs(kac::limit_cdf(t, 1e-8) - kac::limit_cdf(t, 1e-14)) <= 1e-8);
  }
}

TEST_CASE("monotone on a fine grid") {
  double prev = 0.0;
  for (int i = 1; i < 2000; ++i) {
    const double f = kac::limit_cdf(i / 2000.0);
    REQUIRE(f >= prev);
    REQUIRE(f <= 1.0);
    prev = f;
  }
}

TEST_CASE("limit density") {
  CHECK(std::abs(kac::limit_density(1e-3) / 2e-3 - 1.0) < 1e-5);
  for (int i = 5; i <= 95; ++i) {
    const double t = i / 100.0;
    const double h = 1e-6;
    const double fd = (kac::limit_cdf(t + h) - kac::limit_cdf(t - h)) / (2 * h);
    REQUIRE(kac::limit_density(t) == doctest::Approx(fd).epsilon(1e-6));
  }
  const double top = 1.0 - 1e-6;
  // Split near 1 where the density piles up.
  const double q = oracle::simpson(kac::limit_density, 1e-12, 0.9, 20000) +
                   oracle::simpson(kac::limit_density, 0.9, 0.99, 20000) +
                   oracle::simpson(kac::limit_density, 0.99, top, 200000);
  CHECK(std::abs(q - kac::limit_cdf(top)) < 1e-8);
  CHECK_THROWS_AS(kac::limit_density(0.0), kac::Error);
  CHECK_THROWS_AS(kac::limit_density(1.0), kac::Error);
}

TEST_CASE("moduli from explicit uniforms") {
  const std::vector<double> u = {0.25, 0.5};
  const auto s = kac::gaf_moduli_from_uniforms(u, 0.7);
  REQUIRE(s.moduli.size() == 1);
  CHECK(s.moduli[0] == doctest::Approx(0.5).epsilon(1e-15));
  const auto all = kac::gaf_moduli_from_uniforms(u, 1.0);
  REQUIRE(all.moduli.size() == 2);
  CHECK(all.moduli[1] == doctest::Approx(std::exp(-std::log(2.0) / 4)).epsilon(1e-15));
  const std::vector<double> bad = {0.0};
  CHECK_THROWS_AS(kac::gaf_moduli_from_uniforms(bad, 0.5), kac::Error);
}

TEST_CASE("gaf sampler truncation and statistics") {
  const auto k = kac::gaf_truncation(0.7, 1e-12);
  const double x = 0.49;
  CHECK(std::pow(x, k + 1) / (1 - x) <= 1e-12);
  kac::RandomStream a(9, 1), b(9, 1);
  const auto s1 = kac::sample_gaf_moduli(a, 0.7);
  const auto s2 = kac::sample_gaf_moduli(b, 0.7);
  CHECK(s1.moduli == s2.moduli);
  CHECK(s1.truncation == k);
  CHECK(s1.omitted_mass_bound <= 1e-12);
  CHECK(std::is_sorted(s1.moduli.begin(), s1.moduli.end()));

  const int n = 10000;
  double sum = 0, sq = 0;
  std::vector<double> mins;
  kac::RandomStream s(77, 0);
  for (int i = 0; i < n; ++i) {
    const double c = double(kac::sample_gaf_moduli(s, 0.7).moduli.size());
    sum += c;
    sq += c * c;
    mins.push_back(kac::sample_gaf_min_modulus(s));
  }
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / (n - 1));
  CHECK(std::abs(mean - 0.49 / 0.51) < 3 * se);
  // One-sample KS via sorted sweep, kept independent of extremal_stats.
  std::sort(mins.begin(), mins.end());
  double d = 0;
  for (int i = 0; i < n; ++i) {
    const double f = kac::limit_cdf(mins[i]);
    d = std::max({d, (i + 1.0) / n - f, f - double(i) / n});
  }
  CHECK(d < 0.02);
}

TEST_CASE("Bergman kernel and intensity") {
  CHECK(kac::bergman_intensity(0.0) == doctest::Approx(1 / std::numbers::pi));
  CHECK(kac::bergman_intensity(std::polar(std::sqrt(0.5), 0.3)) == doctest::Approx(4 / std::numbers::pi));
  const std::complex<double> z(0.3, -0.5);
  CHECK(std::abs(kac::bergman_kernel(z, z) - kac::bergman_intensity(z)) < 1e-14);
  double prev = 0;
  for (int i = 0; i < 100; ++i) {
    const double v = kac::bergman_intensity(i / 100.0);
    REQUIRE(v > prev);
    prev = v;
  }
  const double mass = oracle::simpson([](double r) { return 2 * std::numbers::pi * r * kac::bergman_intensity(r); },
                                      0.0, 0.7, 20000);
  CHECK(std::abs(mass - 0.49 / 0.51) < 1e-10);
  CHECK(kac::gaf_expected_count(0.7) == doctest::Approx(0.49 / 0.51).epsilon(1e-15));
  CHECK(kac::gaf_ring_mass(0.0, 0.3) == doctest::Approx(0.09 / 0.91));
  CHECK_THROWS_AS(kac::bergman_intensity(1.0), kac::Error);
  CHECK_THROWS_AS(kac::bergman_kernel(0.0, 1.5), kac::Error);
}

TEST_CASE("Coulomb log-density closed forms") {
  const std::vector<std::complex<double>> zero = {0.0};
  CHECK(std::abs(kac::coulomb_log_density(zero)) < 1e-14);
  for (const std::complex<double> z : {std::complex<double>(1.0, 0.0), std::complex<double>(0.5, 0.5),
                                       std::complex<double>(3.0, -2.0)}) {
    const std::vector<std::complex<double>> one = {z};
    CHECK(std::abs(kac::coulomb_log_density(one) + 2 * std::log1p(std::norm(z))) < 1e-10);
  }
  // Two roots +-r: prod |e^{it} - z_k|^2 = |e^{2it} - r^2|^2, whose mean is 1 + r^4.
  for (double r : {0.3, 0.9, 1.7}) {
    const std::vector<std::complex<double>> two = {r, -r};
    const double expect = 2 * std::log(2 * r) - 3 * std::log(1 + r * r * r * r);
    CHECK(std::abs(kac::coulomb_log_density(two) - expect) < 1e-10);
  }
  const std::vector<std::complex<double>> same = {0.5, 0.5};
  CHECK_THROWS_AS(kac::coulomb_log_density(same), kac::Error);
}

TEST_CASE("Coulomb circle mean against the Fourier expansion") {
  // Mean of |q(e^{it})|^2 for q = prod (w - z_k) is sum |q_j|^2 (Parseval).
  kac::RandomStream s(21, 0);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < 30; ++i) roots.push_back(1.3 * s.complex_normal());
  const auto q = oracle::expand_roots(roots);
  long double parseval = 0;
  for (const auto& c : q) parseval += std::norm(c);
  CHECK(kac::coulomb_circle_log_mean(roots, 1024) == doctest::Approx(double(std::log(parseval))).epsilon(1e-12));
}

TEST_CASE("Coulomb rotation invariance") {
  kac::RandomStream s(8, 0);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<std::complex<double>> roots;
    for (int i = 0; i < 50; ++i) roots.push_back(std::polar(0.2 + 1.5 * s.uniform(), 6.3 * s.uniform()));
    const double base = kac::coulomb_log_density(roots);
    for (double phi : {std::numbers::pi / 7, 1.0}) {
      auto rot = roots;
      for (auto& z : rot) z *= std::polar(1.0, phi);
      CHECK(std::abs(kac::coulomb_log_density(rot) - base) < 1e-12 * std::max(1.0, std::abs(base)));
    }
  }
}

TEST_CASE("limit table CSV") {
  std::stringstream ss;
  kac::write_limit_table(ss, 9);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "t,F,f");
  int rows = 0;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 9);
}
