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
#include <numeric>
#include <sstream>
#include <vector>

#include "kac/coeff_models.hpp"
#include "kac/errors.hpp"
#include "kac/limit_laws.hpp"
#include "kac/point_process.hpp"
#include "oracles.hpp"

using kac::Complex;

TEST_CASE("in-disk filtering") {
  const std::vector<Complex> a = {0.5, 2.0};
  const auto s = kac::in_disk_zeros(a, 0.9);
  REQUIRE(s.zeros.size() == 1);
  CHECK(s.zeros[0] == Complex(0.5));
  const std::vector<Complex> b = {-1.0, 1.0};
  CHECK(kac::in_disk_zeros(b, 0.9).zeros.empty());
  CHECK_THROWS_AS(kac::in_disk_zeros(a, 1.0), kac::Error);
  CHECK_THROWS_AS(kac::in_disk_zeros(a, 0.0), kac::Error);
  const std::vector<Complex> edge = {Complex(0.5 + 1e-10, 0.0)};
  try {
    kac::in_disk_zeros(edge, 0.5);
    FAIL("expected BoundaryRoot");
  } catch (const kac::Error& e) {
    CHECK(e.code() == kac::ErrorCode::BoundaryRoot);
  }
}

TEST_CASE("monotone in the radius") {
  kac::RandomStream s(3, 0);
  const kac::Polynomial p(kac::sample_coefficients(kac::CoefficientModel::complex_gaussian(), s, 201));
  const auto r = kac::solve(p);
  std::size_t prev = 0;
  for (double rho : {0.2, 0.4, 0.6, 0.8, 0.9}) {
    const auto snap = kac::in_disk_zeros(r, rho);
    CHECK(snap.zeros.size() >= prev);
    for (const auto& z : kac::in_disk_zeros(r, rho * 0.9).zeros)
      CHECK(std::find(snap.zeros.begin(), snap.zeros.end(), z) != snap.zeros.end());
    prev = snap.zeros.size();
  }
}

TEST_CASE("linear statistics") {
  kac::DiskProcessSnapshot empty;
  empty.rho = 0.5;
  CHECK(kac::linear_statistic(empty, kac::Monomial{1, 0}) == Complex(0.0));
  kac::DiskProcessSnapshot s;
  s.rho = 0.8;
  s.zeros = {Complex(0.1, 0.2), Complex(-0.3, 0.0), Complex(0.0, 0.5)};
  CHECK(kac::linear_statistic(s, kac::Monomial{0, 0}) == Complex(3.0));
  const Complex sz = kac::linear_statistic(s, kac::Monomial{1, 0});
  CHECK(std::abs(sz - Complex(-0.2, 0.7)) < 1e-15);
  const Complex mod2 = kac::linear_statistic(s, kac::Monomial{1, 1});
  CHECK(std::abs(mod2 - Complex(0.05 + 0.09 + 0.25, 0.0)) < 1e-15);
  CHECK(kac::evaluate_test_function(kac::RadialBump{0.5}, 0.0, 0.8) == Complex(1.0));
  CHECK(kac::evaluate_test_function(kac::RadialBump{0.5}, 0.6, 0.8) == Complex(0.0));
  CHECK(kac::evaluate_test_function(kac::Monomial{2, 0}, 0.9, 0.8) == Complex(0.0));
}

TEST_CASE("rotational symmetry of the linear statistic f(z) = z") {
  const int trials = 10000;
  double sum = 0, sq = 0;
  for (int t = 0; t < trials; ++t) {
    kac::RandomStream s(31, t);
    const kac::Polynomial p(kac::sample_coefficients(kac::CoefficientModel::complex_gaussian(), s, 41));
    const auto snap = kac::in_disk_zeros(kac::solve(p), 0.7);
    const double v = kac::linear_statistic(snap, kac::Monomial{1, 0}).real();
    sum += v;
    sq += v * v;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sq / trials - mean * mean) / (trials - 1));
  CHECK(std::abs(mean) < 3 * se);
}

TEST_CASE("greedy matching agrees with optimal assignment on separated sets") {
  kac::RandomStream s(5, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + rep % 12;
    std::vector<Complex> a, b;
    // Well separated points with tiny perturbations: greedy and Hungarian coincide.
    for (int i = 0; i < n; ++i) {
      const Complex z = std::polar(0.1 + 0.8 * i / n, 2.4 * i);
      a.push_back(z);
      b.push_back(z + 1e-5 * s.complex_normal());
    }
    std::reverse(b.begin(), b.end());
    const auto m = kac::match_zeros(a, b);
    CHECK(m.matched == std::size_t(n));
    CHECK(m.unmatched == 0);
    CHECK(m.max_displacement == doctest::Approx(oracle::matched_max_distance(a, b)).epsilon(1e-12));
  }
  const std::vector<Complex> a = {0.0, 0.5};
  const std::vector<Complex> b = {0.0005, 0.2};
  const auto m = kac::match_zeros(a, b);
  CHECK(m.matched == 1);
  CHECK(m.unmatched == 2);
  CHECK(m.max_displacement == doctest::Approx(0.0005));
}

TEST_CASE("stability across truncation degrees") {
  const auto cg = kac::CoefficientModel::complex_gaussian();
  const std::vector<std::size_t> same = {5, 5};
  const auto r = kac::hurwitz_stability(cg, 17, 0.8, same);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].max_displacement == 0.0);
  CHECK(r.pairs[0].unmatched == 0);

  const std::vector<std::size_t> ladder = {100, 200, 400, 800};
  int stable = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rep = kac::hurwitz_stability(cg, seed, 0.8, ladder);
    CHECK(rep.counts.size() == 4);
    CHECK(rep.model == cg.to_string());
    stable += rep.counts[1] == rep.counts[2] && rep.counts[2] == rep.counts[3];
  }
  CHECK(stable == 20);

  const std::vector<std::size_t> annulus_ladder = {50, 100, 200};
  const auto ann = kac::hurwitz_stability(kac::CoefficientModel::uniform_annulus(1.0, 2.0), 3, 0.3, annulus_ladder);
  for (auto c : ann.counts) CHECK(c == 0);

  const std::vector<std::size_t> bad = {1, 4};
  CHECK_THROWS_AS(kac::hurwitz_stability(cg, 1, 0.8, bad), kac::Error);
  const std::vector<std::size_t> down = {40, 20};
  CHECK_THROWS_AS(kac::hurwitz_stability(cg, 1, 0.8, down), kac::Error);
  CHECK_THROWS_AS(kac::hurwitz_stability(cg, 1, 0.97, same), kac::Error);
}

TEST_CASE("displacement stays below the coefficient tail bound") {
  // Rouché: the degree-400 tail on |z| = 0.8 is at most sum_{k>200} |a_k| 0.8^k.
  const auto cg = kac::CoefficientModel::complex_gaussian();
  const std::vector<std::size_t> ladder = {200, 400};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    kac::RandomStream s(seed, 0);
    const auto c = kac::sample_coefficients(cg, s, 401);
    double tail = 0.0;
    for (std::size_t k = 201; k <= 400; ++k) tail += std::abs(c[k]) * std::pow(0.8, double(k));
    CHECK(tail < 1e-15);
    const auto rep = kac::hurwitz_stability(cg, seed, 0.8, ladder);
    CHECK(rep.stable(1e-6));
  }
}

TEST_CASE("boundary roots jitter the radius") {
  // Roots at exactly 0.5 and 0.25 with the requested radius on the first one.
  const std::vector<Complex> roots = {0.5, Complex(0.0, 0.25), 3.0};
  const auto poly = kac::Polynomial::from_roots(roots);
  std::vector<Complex> coeffs(poly.coeffs().begin(), poly.coeffs().end());
  const std::vector<std::size_t> deg = {3, 3};
  const auto rep = kac::hurwitz_stability(coeffs, 0.5, deg);
  CHECK(rep.rho_jitters == 1);
  CHECK(rep.rho == doctest::Approx(0.501));
  CHECK(rep.requested_rho == 0.5);
  CHECK(rep.counts[0] == 2);
}

TEST_CASE("radial histogram") {
  std::vector<kac::DiskProcessSnapshot> empty(100);
  for (auto& s : empty) s.rho = 0.8;
  const std::vector<double> edges = {0.0, 0.3, 0.7, 0.8};
  const auto h = kac::radial_intensity_histogram(empty, edges);
  for (double m : h.mean_count) CHECK(m == 0.0);
  CHECK(h.predicted[0] == doctest::Approx(0.09 / 0.91));
  CHECK(std::accumulate(h.predicted.begin(), h.predicted.end(), 0.0) == doctest::Approx(0.64 / 0.36));
  CHECK_THROWS_AS(kac::radial_intensity_histogram(std::span(empty).first(99), edges), kac::Error);
  const std::vector<double> flat = {0.0, 0.3, 0.3};
  CHECK_THROWS_AS(kac::radial_intensity_histogram(empty, flat), kac::Error);
  const std::vector<double> wide = {0.0, 0.9};
  CHECK_THROWS_AS(kac::radial_intensity_histogram(empty, wide), kac::Error);
}

TEST_CASE("bin counts add up to the in-disk total") {
  const std::vector<double> edges = {0.0, 0.1, 0.25, 0.5, 0.7};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    kac::RandomStream s(seed, 2);
    const kac::Polynomial p(kac::sample_coefficients(kac::CoefficientModel::complex_gaussian(), s, 121));
    const auto snap = kac::in_disk_zeros(kac::solve(p), 0.7);
    const auto counts = kac::radial_bin_counts(snap, edges);
    CHECK(std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == snap.zeros.size());
  }
}

TEST_CASE("snapshot CSV and stability table") {
  kac::DiskProcessSnapshot s;
  s.n = 10;
  s.rho = 0.5;
  s.seed = 4;
  s.zeros = {Complex(0.1, -0.2)};
  std::stringstream ss;
  kac::write_snapshot_csv(ss, std::span(&s, 1));
  CHECK(ss.str() == "seed,n,rho,re,im\n4,10,0.5,0.10000000000000001,-0.20000000000000001\n");
  const std::vector<std::size_t> deg = {20, 40};
  const auto rep = kac::hurwitz_stability(kac::CoefficientModel::complex_gaussian(), 1, 0.5, deg);
  std::stringstream t;
  kac::write_stability_table(t, std::span(&rep, 1));
  std::string header, row;
  std::getline(t, header);
  std::getline(t, row);
  CHECK(header.rfind("seed", 0) == 0);
  CHECK(row.rfind("1 ", 0) == 0);
}
