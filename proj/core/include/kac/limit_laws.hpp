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

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "kac/rng.hpp"

namespace kac {

/// F(t) = 1 - prod_{k>=1} (1 - t^{2k}), the law of the smallest zero modulus
/// of the hyperbolic Gaussian analytic function sum a_k z^k.
///
/// The product is cut at the first K with t^{2(K+1)} / (1 - t^2) <= budget,
/// which bounds the tail factor since 1 - prod_{k>K}(1 - x_k) <= sum x_k.
/// K(t) grows with t, so the truncated value is non-decreasing in t.
class LimitCdfEvaluator {
 public:
  explicit LimitCdfEvaluator(double error_budget = 1e-14);

  double error_budget() const noexcept { return budget_; }

  /// Smallest K whose remainder bound at t is within budget.
  std::size_t truncation_order(double t) const;

  /// Throws InvalidArgument unless 0 <= t < 1.
  double operator()(double t) const;

  /// Term-by-term derivative of the truncated product, for 0 < t < 1:
  ///   F'(t) = prod_k (1 - t^{2k}) * sum_k 2k t^{2k-1} / (1 - t^{2k}).
  double density(double t) const;

 private:
  double budget_;
};

double limit_cdf(double t, double budget = 1e-14);
double limit_density(double t);

/// Moduli of the in-disk zero set for |z| < rho_max: U_k^{1/(2k)} for
/// k = 1..K, keeping those below rho_max.
struct GafModuliSample {
  std::vector<double> moduli;  // ascending
  double rho_max = 0.0;
  std::size_t truncation = 0;
  /// sum_{k>K} rho_max^{2k}: bounds the chance that an omitted index would
  /// have landed inside.
  double omitted_mass_bound = 0.0;
};

/// K is the smallest index with rho^{2(K+1)} / (1 - rho^2) <= budget.
std::size_t gaf_truncation(double rho_max, double budget);

GafModuliSample sample_gaf_moduli(RandomStream& rng, double rho_max, double budget = 1e-12);

/// Same construction from explicit uniforms U_1, U_2, ... (index k = position + 1).
GafModuliSample gaf_moduli_from_uniforms(std::span<const double> uniforms, double rho_max);

/// Minimum of U_k^{1/(2k)} over all k >= 1. Draws k = 1, 2, ... and stops
/// once m^{2(K+1)} / (1 - m^2) < tail_budget for the running minimum m: past
/// that point a later index undercuts m with probability below the budget.
double sample_gaf_min_modulus(RandomStream& rng, double tail_budget = 1e-9);

/// E #{zeros in |z| < rho} = rho^2 / (1 - rho^2).
double gaf_expected_count(double rho);
/// Expected count in the ring lo <= |z| < hi.
double gaf_ring_mass(double lo, double hi);

/// K(z, w) = 1 / (pi (1 - z conj(w))^2) on the unit disk.
std::complex<double> bergman_kernel(std::complex<double> z, std::complex<double> w);
/// K(z, z) = 1 / (pi (1 - |z|^2)^2). Throws for |z| >= 1.
double bergman_intensity(std::complex<double> z);

/// Unnormalized log-density of the complex Gaussian Kac zero law:
///   sum_{i != j} ln|z_i - z_j| - (n+1) ln( (1/2pi) int prod_k |e^{it} - z_k|^2 dt ).
/// The circle average uses an M-node trapezoid rule in log space (nodes
/// doubled from 2^10 until two levels agree to 1e-9, at most 2^16).
double coulomb_log_density(std::span<const std::complex<double>> roots);

/// The circle-average term alone, ln( (1/2pi) int prod |e^{it} - z_k|^2 dt ).
double coulomb_circle_log_mean(std::span<const std::complex<double>> roots, std::size_t nodes);

/// CSV `t,F,f` on a uniform grid of `points` interior points of (0, 1).
void write_limit_table(std::ostream& out, std::size_t points, double budget = 1e-14);

}  // namespace kac
