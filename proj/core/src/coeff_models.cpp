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

#include "kac/coeff_models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kac/errors.hpp"

namespace kac {

namespace {

struct KindEntry {
  CoefficientKind kind;
  std::string_view name;
  std::string_view first_param;
  std::string_view second_param;
};

constexpr KindEntry kKinds[] = {
    {CoefficientKind::RealGaussian, "real_gaussian", "sigma", ""},
    {CoefficientKind::ComplexGaussian, "complex_gaussian", "scale", ""},
    {CoefficientKind::ExponentialReal, "exponential_real", "mean", ""},
    {CoefficientKind::RadialExponential, "radial_exponential", "scale", ""},
    {CoefficientKind::UniformReal, "uniform_real", "half_width", ""},
    {CoefficientKind::UniformAnnulus, "uniform_annulus", "inner", "outer"},
    {CoefficientKind::Cauchy, "cauchy", "gamma", ""},
};

const KindEntry& entry_for(CoefficientKind kind) {
  for (const auto& e : kKinds)
    if (e.kind == kind) return e;
  throw Error(ErrorCode::InvalidArgument, "unknown coefficient kind");
}

void require_positive(double value, std::string_view what) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive and finite");
}

// Two significant digits, rounded towards zero.
double round_down_two_digits(double v) {
  if (!(v > 0.0)) return 0.0;
  const double unit = std::pow(10.0, std::floor(std::log10(v)) - 1.0);
  return std::floor(v / unit) * unit;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view kind_name(CoefficientKind kind) noexcept {
  for (const auto& e : kKinds)
    if (e.kind == kind) return e.name;
  return "unknown";
}

CoefficientModel CoefficientModel::real_gaussian(double sigma) {
  require_positive(sigma, "sigma");
  return {CoefficientKind::RealGaussian, sigma, 0.0};
}

CoefficientModel CoefficientModel::complex_gaussian(double scale) {
  require_positive(scale, "scale");
  return {CoefficientKind::ComplexGaussian, scale, 0.0};
}

CoefficientModel CoefficientModel::exponential_real(double mean) {
  require_positive(mean, "mean");
  return {CoefficientKind::ExponentialReal, mean, 0.0};
}

CoefficientModel CoefficientModel::radial_exponential(double scale) {
  require_positive(scale, "scale");
  return {CoefficientKind::RadialExponential, scale, 0.0};
}

CoefficientModel CoefficientModel::uniform_real(double half_width) {
  require_positive(half_width, "half_width");
  return {CoefficientKind::UniformReal, half_width, 0.0};
}

CoefficientModel CoefficientModel::uniform_annulus(double inner, double outer) {
  if (!(inner >= 0.0) || !std::isfinite(inner))
    throw Error(ErrorCode::InvalidArgument, "inner radius must be non-negative");
  require_positive(outer, "outer");
  if (!(outer > inner)) throw Error(ErrorCode::InvalidArgument, "outer radius must exceed inner");
  return {CoefficientKind::UniformAnnulus, inner, outer};
}

CoefficientModel CoefficientModel::cauchy(double gamma) {
  require_positive(gamma, "gamma");
  return {CoefficientKind::Cauchy, gamma, 0.0};
}

CoefficientModel CoefficientModel::parse(std::string_view text) {
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::replace(normalized.begin(), normalized.end(), ':', ' ');
  std::istringstream in(normalized);

  std::string kind_text;
  std::vector<std::pair<std::string, double>> params;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      if (!kind_text.empty()) throw Error(ErrorCode::ParseError, "unexpected token '" + token + "'");
      kind_text = token;
      continue;
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "kind" || key == "model") {
      kind_text = value;
      continue;
    }
    double number = 0.0;
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, number);
    if (ec != std::errc() || ptr != last)
      throw Error(ErrorCode::ParseError, "bad numeric value for '" + key + "': " + value);
    params.emplace_back(key, number);
  }
  if (kind_text.empty()) throw Error(ErrorCode::ParseError, "missing coefficient kind");

  const KindEntry* entry = nullptr;
  for (const auto& e : kKinds)
    if (e.name == kind_text) entry = &e;
  if (entry == nullptr) {
    if (kind_text == "exponential") entry = &entry_for(CoefficientKind::ExponentialReal);
    else if (kind_text == "gaussian") entry = &entry_for(CoefficientKind::RealGaussian);
    else throw Error(ErrorCode::ParseError, "unknown coefficient kind '" + kind_text + "'");
  }

  const bool two_params = !entry->second_param.empty();
  double first = 1.0;
  double second = two_params ? 2.0 : 0.0;
  for (const auto& [key, value] : params) {
    if (key == entry->first_param || (!two_params && key == "scale")) first = value;
    else if (two_params && key == entry->second_param) second = value;
    else throw Error(ErrorCode::ParseError, "unknown parameter '" + key + "' for " + kind_text);
  }

  switch (entry->kind) {
    case CoefficientKind::RealGaussian: return real_gaussian(first);
    case CoefficientKind::ComplexGaussian: return complex_gaussian(first);
    case CoefficientKind::ExponentialReal: return exponential_real(first);
    case CoefficientKind::RadialExponential: return radial_exponential(first);
    case CoefficientKind::UniformReal: return uniform_real(first);
    case CoefficientKind::UniformAnnulus: return uniform_annulus(first, second);
    case CoefficientKind::Cauchy: return cauchy(first);
  }
  throw Error(ErrorCode::ParseError, "unreachable kind");
}

std::string CoefficientModel::to_string() const {
  const auto& e = entry_for(kind_);
  std::string out = "kind=" + std::string(e.name) + " " + std::string(e.first_param) + "=" +
                    format_number(first_);
  if (!e.second_param.empty())
    out += " " + std::string(e.second_param) + "=" + format_number(second_);
  return out;
}

bool CoefficientModel::is_real() const noexcept {
  switch (kind_) {
    case CoefficientKind::RealGaussian:
    case CoefficientKind::ExponentialReal:
    case CoefficientKind::UniformReal:
    case CoefficientKind::Cauchy:
      return true;
    default:
      return false;
  }
}

bool CoefficientModel::is_rotation_invariant() const noexcept {
  return kind_ == CoefficientKind::ComplexGaussian || kind_ == CoefficientKind::RadialExponential ||
         kind_ == CoefficientKind::UniformAnnulus;
}

std::complex<double> CoefficientModel::sample(RandomStream& rng) const noexcept {
  switch (kind_) {
    case CoefficientKind::RealGaussian:
      return {first_ * rng.normal(), 0.0};
    case CoefficientKind::ComplexGaussian:
      return first_ * rng.complex_normal();
    case CoefficientKind::ExponentialReal:
      return {-first_ * std::log(rng.uniform()), 0.0};
    case CoefficientKind::RadialExponential: {
      // Modulus is Gamma(2, scale): sum of two exponentials.
      const double radius = -first_ * std::log(rng.uniform() * rng.uniform());
      return std::polar(radius, 2.0 * std::numbers::pi * rng.uniform());
    }
    case CoefficientKind::UniformReal:
      return {first_ * (2.0 * rng.uniform() - 1.0), 0.0};
    case CoefficientKind::UniformAnnulus: {
      const double inner2 = first_ * first_;
      const double radius = std::sqrt(inner2 + (second_ * second_ - inner2) * rng.uniform());
      return std::polar(std::clamp(radius, first_, second_), 2.0 * std::numbers::pi * rng.uniform());
    }
    case CoefficientKind::Cauchy:
      return {first_ * std::tan(std::numbers::pi * (rng.uniform() - 0.5)), 0.0};
  }
  return {};
}

void CoefficientModel::sample(RandomStream& rng, std::span<std::complex<double>> out) const noexcept {
  for (auto& value : out) value = sample(rng);
}

double CoefficientModel::modulus_survival(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "modulus_cdf needs t >= 0");
  if (std::isinf(t)) return 0.0;
  switch (kind_) {
    case CoefficientKind::RealGaussian:
      return std::erfc(t / (first_ * std::numbers::sqrt2));
    case CoefficientKind::ComplexGaussian: {
      const double x = t / first_;
      return std::exp(-x * x);
    }
    case CoefficientKind::ExponentialReal:
      return std::exp(-t / first_);
    case CoefficientKind::RadialExponential: {
      const double x = t / first_;
      return std::exp(-x) * (1.0 + x);
    }
    case CoefficientKind::UniformReal:
      return std::max(0.0, 1.0 - t / first_);
    case CoefficientKind::UniformAnnulus: {
      if (t <= first_) return 1.0;
      if (t >= second_) return 0.0;
      return (second_ * second_ - t * t) / (second_ * second_ - first_ * first_);
    }
    case CoefficientKind::Cauchy:
      return t == 0.0 ? 1.0 : 2.0 / std::numbers::pi * std::atan(first_ / t);
  }
  return 0.0;
}

double CoefficientModel::modulus_cdf(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "modulus_cdf needs t >= 0");
  if (std::isinf(t)) return 1.0;
  switch (kind_) {
    case CoefficientKind::RealGaussian:
      return std::erf(t / (first_ * std::numbers::sqrt2));
    case CoefficientKind::ComplexGaussian: {
      const double x = t / first_;
      return -std::expm1(-x * x);
    }
    case CoefficientKind::ExponentialReal:
      return -std::expm1(-t / first_);
    case CoefficientKind::RadialExponential: {
      const double x = t / first_;
      return -std::expm1(-x) - x * std::exp(-x);
    }
    case CoefficientKind::UniformReal:
      return std::min(1.0, t / first_);
    case CoefficientKind::UniformAnnulus: {
      if (t <= first_) return 0.0;
      if (t >= second_) return 1.0;
      return (t * t - first_ * first_) / (second_ * second_ - first_ * first_);
    }
    case CoefficientKind::Cauchy:
      return 2.0 / std::numbers::pi * std::atan(t / first_);
  }
  return 0.0;
}

std::optional<ZeroExponent> CoefficientModel::zero_exponent() const {
  double k = 1.0;
  double delta = first_;
  switch (kind_) {
    case CoefficientKind::RealGaussian:
    case CoefficientKind::ExponentialReal:
    case CoefficientKind::UniformReal:
    case CoefficientKind::Cauchy:
      k = 1.0;
      break;
    case CoefficientKind::ComplexGaussian:
    case CoefficientKind::RadialExponential:
      k = 2.0;
      break;
    case CoefficientKind::UniformAnnulus:
      if (first_ > 0.0) return std::nullopt;
      k = 2.0;
      delta = second_;
      break;
  }
  // Every built-in CDF has F(t) / t^k non-increasing on (0, delta), so the
  // ratio at delta is a valid witness.
  const double a = round_down_two_digits(modulus_cdf(delta) / std::pow(delta, k));
  return ZeroExponent{k, a, delta};
}

double CoefficientModel::log_moment() const {
  // E log(1+X) = int_0^inf P(X > t) / (1 + t) dt, mapped to (0, 1) by
  // t = u / (1 - u).
  auto integrand = [this](double u) {
    if (u >= 1.0) {
      // Limit of S(t) / (1 - u) as u -> 1; only the Cauchy tail is nonzero.
      return kind_ == CoefficientKind::Cauchy ? 2.0 * first_ / std::numbers::pi : 0.0;
    }
    const double t = u / (1.0 - u);
    return modulus_survival(t) / (1.0 - u);
  };
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  // Split at the law's scale so kinks of bounded supports fall on nodes.
  std::vector<double> edges = {0.0};
  if (kind_ == CoefficientKind::UniformAnnulus) {
    if (first_ > 0.0) edges.push_back(first_ / (1.0 + first_));
    edges.push_back(second_ / (1.0 + second_));
  } else {
    edges.push_back(first_ / (1.0 + first_));
  }
  edges.push_back(1.0);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    total += gauss_kronrod<double, 61>::integrate(integrand, edges[i], edges[i + 1], 15, 1e-14);
  return total;
}

bool CoefficientModel::log_moment_finite() const { return std::isfinite(log_moment()); }

std::optional<double> CoefficientModel::root_modulus_bound() const noexcept {
  if (kind_ == CoefficientKind::UniformAnnulus && first_ > 0.0) return 1.0 + second_ / first_;
  return std::nullopt;
}

std::vector<std::complex<double>> sample_coefficients(const CoefficientModel& model,
                                                      RandomStream& rng, std::size_t count) {
  std::vector<std::complex<double>> out(count);
  model.sample(rng, out);
  return out;
}

double growth_diagnostic(std::span<const std::complex<double>> samples, double eps) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "growth_diagnostic needs samples");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "growth_diagnostic needs eps > 0");
  // Work in logs: e^{eps k} overflows long before the ratio becomes uninteresting.
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double modulus = std::abs(samples[k]);
    if (modulus == 0.0) continue;
    best = std::max(best, std::log(modulus) - eps * static_cast<double>(k));
  }
  return std::exp(best);
}

}  // namespace kac
