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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kac/rng.hpp"

namespace kac {

enum class CoefficientKind {
  RealGaussian,       // N(0, scale^2)
  ComplexGaussian,    // re, im ~ N(0, scale^2 / 2), so |a|^2 ~ Exp(mean scale^2)
  ExponentialReal,    // Exp(mean scale), positive reals
  RadialExponential,  // density e^{-|z|/scale} / (2 pi scale^2) on C
  UniformReal,        // Uniform[-scale, scale]
  UniformAnnulus,     // area-uniform on inner <= |z| <= outer
  Cauchy,             // real Cauchy, scale gamma
};

std::string_view kind_name(CoefficientKind kind) noexcept;

/// Witness constants for P(|a0| <= t) >= a t^k on (0, delta).
struct ZeroExponent {
  double k = 0.0;
  double a = 0.0;
  double delta = 0.0;
};

/// Descriptor of the i.i.d. coefficient law. Immutable once built; parameter
/// validation happens in the factories, never during sampling.
class CoefficientModel {
 public:
  static CoefficientModel real_gaussian(double sigma = 1.0);
  static CoefficientModel complex_gaussian(double scale = 1.0);
  static CoefficientModel exponential_real(double mean = 1.0);
  static CoefficientModel radial_exponential(double scale = 1.0);
  static CoefficientModel uniform_real(double half_width = 1.0);
  static CoefficientModel uniform_annulus(double inner = 1.0, double outer = 2.0);
  static CoefficientModel cauchy(double gamma = 1.0);

  /// Accepts `kind=complex_gaussian scale=2`, `complex_gaussian:scale=2`, or
  /// a bare kind name. Tokens may be separated by spaces or commas.
  static CoefficientModel parse(std::string_view text);
  /// Canonical record, e.g. `kind=uniform_annulus inner=1 outer=2`.
  std::string to_string() const;

  CoefficientKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return kind_name(kind_); }
  double scale() const noexcept { return first_; }
  double inner_radius() const noexcept { return first_; }
  double outer_radius() const noexcept { return second_; }

  bool is_real() const noexcept;
  bool is_rotation_invariant() const noexcept;

  std::complex<double> sample(RandomStream& rng) const noexcept;
  void sample(RandomStream& rng, std::span<std::complex<double>> out) const noexcept;

  /// Exact P(|a0| <= t).
  double modulus_cdf(double t) const;
  /// Exact P(|a0| > t).
  double modulus_survival(double t) const;

  /// nullopt when the law puts no mass near zero (annulus with inner > 0).
  std::optional<ZeroExponent> zero_exponent() const;

  /// E log(1 + |a0|), integrated from the closed-form survival function.
  double log_moment() const;
  bool log_moment_finite() const;

  /// Deterministic bound on the moduli of all roots when every coefficient
  /// lies in a ring; nullopt for laws with mass near 0 or infinity.
  std::optional<double> root_modulus_bound() const noexcept;

  friend bool operator==(const CoefficientModel&, const CoefficientModel&) = default;

 private:
  CoefficientModel(CoefficientKind kind, double first, double second)
      : kind_(kind), first_(first), second_(second) {}

  CoefficientKind kind_;
  double first_;
  double second_;
};

inline std::complex<double> sample_coefficient(const CoefficientModel& model, RandomStream& rng) {
  return model.sample(rng);
}

inline double modulus_cdf(const CoefficientModel& model, double t) { return model.modulus_cdf(t); }

inline std::optional<ZeroExponent> declared_zero_exponent(const CoefficientModel& model) {
  return model.zero_exponent();
}

/// n + 1 coefficients a_0..a_n drawn in index order from `rng`.
std::vector<std::complex<double>> sample_coefficients(const CoefficientModel& model,
                                                      RandomStream& rng, std::size_t count);

/// max_k |a_k| e^{-eps k}. Returns 0 for an all-zero sequence.
double growth_diagnostic(std::span<const std::complex<double>> samples, double eps);

}  // namespace kac
