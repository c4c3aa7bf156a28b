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

#include "kac/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "kac/errors.hpp"

namespace kac {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::DegenerateInput, "polynomial needs at least one coefficient");
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::DegenerateInput, "non-finite coefficient");
  if (std::abs(coeffs_.back()) < std::numeric_limits<double>::min())
    throw Error(ErrorCode::DegenerateInput, "leading coefficient is zero or below the underflow guard");
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> c{leading};
  c.reserve(roots.size() + 1);
  for (const Complex& r : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(Complex factor) const {
  std::vector<Complex> c(coeffs_);
  for (auto& v : c) v *= factor;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::truncated(std::size_t degree) const {
  if (degree > this->degree()) throw Error(ErrorCode::InvalidArgument, "truncation above degree");
  return Polynomial(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + degree + 1));
}

Polynomial reverse(const Polynomial& p) {
  if (p[0] == Complex(0.0))
    throw Error(ErrorCode::ZeroConstantTerm, "reversal needs a nonzero constant term");
  std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
  std::reverse(c.begin(), c.end());
  return Polynomial(std::move(c));
}

double RootSet::worst_residual() const noexcept {
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

namespace {

// P'(z) / P(z) without forming z^n for |z| > 1.
Complex log_derivative(std::span<const Complex> c, Complex z) {
  const double n = static_cast<double>(c.size() - 1);
  if (std::abs(z) <= 1.0) {
    const auto [p, dp] = horner_with_derivative(c, z);
    return dp / p;
  }
  std::vector<Complex> rev(c.rbegin(), c.rend());
  const Complex w = 1.0 / z;
  const auto [q, dq] = horner_with_derivative(rev, w);
  return (n * q - w * dq) / (z * q);
}

}  // namespace

int argument_principle_count(const Polynomial& p, Complex center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const auto c = p.coeffs();
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t nodes = 64; nodes <= (1u << 16); nodes *= 2) {
    double sum = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes);
      const Complex offset = std::polar(radius, theta);
      sum += (log_derivative(c, center + offset) * offset).real();
    }
    const double value = sum / static_cast<double>(nodes);
    if (std::isfinite(value) && std::isfinite(previous) &&
        std::lround(value) == std::lround(previous) &&
        std::abs(value - std::round(value)) < 0.05)
      return static_cast<int>(std::lround(value));
    previous = value;
  }
  throw Error(ErrorCode::QuadratureNonConvergence, "argument principle count did not stabilize");
}

int count_zeros_in_disk(const Polynomial& p, Complex center, double radius, const SolveOptions& opts) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const RootSet roots = solve(p, opts);
  int inside = 0;
  for (const Complex& z : roots.roots) {
    const double distance = std::abs(z - center);
    if (std::abs(distance - radius) <= 1e-9 * radius) {
      std::ostringstream msg;
      msg << "root " << z << " lies on the contour |z - " << center << "| = " << radius;
      throw Error(ErrorCode::BoundaryRoot, msg.str());
    }
    if (distance < radius) ++inside;
  }
  const int contour = argument_principle_count(p, center, radius);
  if (contour != inside) {
    std::ostringstream msg;
    msg << "solved roots give " << inside << " zeros inside, contour integral gives " << contour;
    throw Error(ErrorCode::CountMismatch, msg.str());
  }
  return inside;
}

Polynomial read_polynomial(std::istream& in) {
  std::vector<Complex> c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> re >> im))
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected `re im`");
    c.emplace_back(re, im);
  }
  return Polynomial(std::move(c));
}

void write_polynomial(std::ostream& out, const Polynomial& p) {
  const auto old = out.precision(17);
  for (const Complex& c : p.coeffs()) out << c.real() << ' ' << c.imag() << '\n';
  out.precision(old);
}

void write_roots_csv(std::ostream& out, const RootSet& roots) {
  const auto old = out.precision(17);
  out << "re,im,modulus,residual\n";
  for (std::size_t k = 0; k < roots.roots.size(); ++k) {
    const Complex z = roots.roots[k];
    out << z.real() << ',' << z.imag() << ',' << std::abs(z) << ',' << roots.residuals[k] << '\n';
  }
  out.precision(old);
}

}  // namespace kac
