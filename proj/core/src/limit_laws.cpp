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

#include "kac/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "kac/errors.hpp"

namespace kac {

LimitCdfEvaluator::LimitCdfEvaluator(double error_budget) : budget_(error_budget) {
  if (!(error_budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "error budget must be positive");
}

std::size_t LimitCdfEvaluator::truncation_order(double t) const {
  if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "limit_cdf needs 0 <= t < 1");
  if (t == 0.0) return 0;
  const double x = t * t;
  const double guess = std::ceil(std::log(budget_ * (1.0 - x)) / std::log(x)) - 1.0;
  auto k = static_cast<std::size_t>(std::max(0.0, guess));
  // Settle rounding in the logarithms: smallest K with x^{K+1}/(1-x) <= budget.
  auto bound = [&](std::size_t kk) { return std::pow(x, static_cast<double>(kk + 1)) / (1.0 - x); };
  while (k > 0 && bound(k - 1) <= budget_) --k;
  while (bound(k) > budget_) ++k;
  return k;
}

double LimitCdfEvaluator::operator()(double t) const {
  const std::size_t order = truncation_order(t);
  const double x = t * t;
  double power = 1.0;
  double product = 1.0;
  for (std::size_t k = 1; k <= order; ++k) {
    power *= x;
    product *= 1.0 - power;
    if (product == 0.0) break;
  }
  return 1.0 - product;
}

double LimitCdfEvaluator::density(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "limit_density needs 0 < t < 1");
  const std::size_t order = truncation_order(t);
  const double x = t * t;
  double power = 1.0;  // t^{2k}
  double product = 1.0;
  double sum = 0.0;
  for (std::size_t k = 1;; ++k) {
    power *= x;
    const double factor = 1.0 - power;
    product *= factor;
    const double term = 2.0 * static_cast<double>(k) * (power / t) / factor;
    sum += term;
    if (product == 0.0) return 0.0;
    if (k >= order && term <= std::numeric_limits<double>::epsilon() * 1e-2 * sum) break;
  }
  return product * sum;
}

double limit_cdf(double t, double budget) { return LimitCdfEvaluator(budget)(t); }

double limit_density(double t) { return LimitCdfEvaluator().density(t); }

std::size_t gaf_truncation(double rho_max, double budget) {
  if (!(rho_max > 0.0 && rho_max < 1.0))
    throw Error(ErrorCode::InvalidArgument, "rho_max must lie in (0, 1)");
  if (!(budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
  const double x = rho_max * rho_max;
  std::size_t k = 0;
  double tail = x / (1.0 - x);  // sum_{j>k} x^j at k = 0
  while (tail > budget) {
    ++k;
    tail *= x;
  }
  return k;
}

namespace {

GafModuliSample moduli_from(std::span<const double> uniforms, double rho_max) {
  GafModuliSample out;
  out.rho_max = rho_max;
  out.truncation = uniforms.size();
  const double x = rho_max * rho_max;
  out.omitted_mass_bound = std::pow(x, static_cast<double>(uniforms.size() + 1)) / (1.0 - x);
  for (std::size_t i = 0; i < uniforms.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double modulus = std::exp(std::log(uniforms[i]) / (2.0 * k));
    if (modulus < rho_max) out.moduli.push_back(modulus);
  }
  std::sort(out.moduli.begin(), out.moduli.end());
  return out;
}

}  // namespace

GafModuliSample sample_gaf_moduli(RandomStream& rng, double rho_max, double budget) {
  const std::size_t k = gaf_truncation(rho_max, budget);
  std::vector<double> u(k);
  for (auto& v : u) v = rng.uniform();
  return moduli_from(u, rho_max);
}

GafModuliSample gaf_moduli_from_uniforms(std::span<const double> uniforms, double rho_max) {
  if (!(rho_max > 0.0 && rho_max <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "rho_max must lie in (0, 1]");
  for (double u : uniforms)
    if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::InvalidArgument, "uniforms must lie in (0, 1)");
  return moduli_from(uniforms, rho_max);
}

double sample_gaf_min_modulus(RandomStream& rng, double tail_budget) {
  if (!(tail_budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "tail budget must be positive");
  double best = std::sqrt(rng.uniform());
  for (std::size_t k = 1;; ++k) {
    const double x = best * best;
    if (std::pow(x, static_cast<double>(k + 1)) / (1.0 - x) < tail_budget) return best;
    const double next = std::exp(std::log(rng.uniform()) / (2.0 * static_cast<double>(k + 1)));
    best = std::min(best, next);
  }
}

double gaf_expected_count(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorCode::InvalidArgument, "rho must lie in [0, 1)");
  return rho * rho / (1.0 - rho * rho);
}

double gaf_ring_mass(double lo, double hi) {
  if (!(lo <= hi)) throw Error(ErrorCode::InvalidArgument, "ring edges out of order");
  return gaf_expected_count(hi) - gaf_expected_count(lo);
}

std::complex<double> bergman_kernel(std::complex<double> z, std::complex<double> w) {
  if (!(std::abs(z) < 1.0 && std::abs(w) < 1.0))
    throw Error(ErrorCode::InvalidArgument, "Bergman kernel needs points in the open unit disk");
  const std::complex<double> d = 1.0 - z * std::conj(w);
  return 1.0 / (std::numbers::pi * d * d);
}

double bergman_intensity(std::complex<double> z) {
  const double r2 = std::norm(z);
  if (!(r2 < 1.0))
    throw Error(ErrorCode::InvalidArgument, "Bergman intensity needs |z| < 1");
  const double d = 1.0 - r2;
  return 1.0 / (std::numbers::pi * d * d);
}

double coulomb_circle_log_mean(std::span<const std::complex<double>> roots, std::size_t nodes) {
  if (nodes == 0) throw Error(ErrorCode::InvalidArgument, "need at least one node");
  std::vector<double> logs(nodes);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double acc = 0.0;
    for (const auto& z : roots) {
      const double dx = c - z.real();
      const double dy = s - z.imag();
      acc += std::log(dx * dx + dy * dy);
    }
    logs[j] = acc;
    top = std::max(top, acc);
  }
  if (!std::isfinite(top)) throw Error(ErrorCode::QuadratureNonConvergence, "every node hits a root");
  double sum = 0.0;
  for (double v : logs) sum += std::exp(v - top);
  return top + std::log(sum / static_cast<double>(nodes));
}

double coulomb_log_density(std::span<const std::complex<double>> roots) {
  const std::size_t n = roots.size();
  double pairs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(roots[i] - roots[j]);
      if (!(d > 1e-12)) throw Error(ErrorCode::CoincidentRoots, "roots closer than 1e-12");
      pairs += std::log(d);
    }
  }
  pairs *= 2.0;

  double previous = coulomb_circle_log_mean(roots, 1u << 10);
  for (std::size_t nodes = 1u << 11; nodes <= (1u << 16); nodes *= 2) {
    const double current = coulomb_circle_log_mean(roots, nodes);
    if (std::abs(current - previous) <= 1e-9)
      return pairs - static_cast<double>(n + 1) * current;
    previous = current;
  }
  throw Error(ErrorCode::QuadratureNonConvergence, "circle average did not stabilize by 2^16 nodes");
}

void write_limit_table(std::ostream& out, std::size_t points, double budget) {
  const LimitCdfEvaluator eval(budget);
  const auto old = out.precision(17);
  out << "t,F,f\n";
  for (std::size_t i = 1; i <= points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points + 1);
    out << t << ',' << eval(t) << ',' << eval.density(t) << '\n';
  }
  out.precision(old);
}

}  // namespace kac
