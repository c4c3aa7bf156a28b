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

#include "kac/horner.hpp"

#include <cmath>
#include <cstddef>

namespace kac {

namespace {

inline void two_sum(double a, double b, double& sum, double& err) noexcept {
  sum = a + b;
  const double bv = sum - a;
  err = (a - (sum - bv)) + (b - bv);
}

inline void two_prod(double a, double b, double& prod, double& err) noexcept {
  prod = a * b;
  err = std::fma(a, b, -prod);
}

// Coefficient k of the polynomial read forwards (ascending powers of z) or
// backwards (ascending powers of w = 1/z, i.e. z^n P(1/z)).
template <bool Reversed>
inline Complex coeff_at(std::span<const Complex> c, std::size_t k) noexcept {
  if constexpr (Reversed) return c[k];
  else return c[c.size() - 1 - k];
}

// All recurrences below walk from the highest power down.
template <bool Reversed>
HornerValue horner_pair(std::span<const Complex> c, Complex z) noexcept {
  Complex p = coeff_at<Reversed>(c, 0);
  Complex dp = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    dp = dp * z + p;
    p = p * z + coeff_at<Reversed>(c, k);
  }
  return {p, dp};
}

template <bool Reversed>
Complex horner_eft(std::span<const Complex> c, Complex z) noexcept {
  const double zr = z.real();
  const double zi = z.imag();
  double sr = coeff_at<Reversed>(c, 0).real();
  double si = coeff_at<Reversed>(c, 0).imag();
  double er = 0.0;
  double ei = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const Complex ck = coeff_at<Reversed>(c, k);
    double p1, e1, p2, e2, h, e3, nr, e4;
    two_prod(sr, zr, p1, e1);
    two_prod(si, zi, p2, e2);
    two_sum(p1, -p2, h, e3);
    two_sum(h, ck.real(), nr, e4);

    double q1, f1, q2, f2, g, f3, ni, f4;
    two_prod(sr, zi, q1, f1);
    two_prod(si, zr, q2, f2);
    two_sum(q1, q2, g, f3);
    two_sum(g, ck.imag(), ni, f4);

    const double local_r = (e1 - e2) + (e3 + e4);
    const double local_i = (f1 + f2) + (f3 + f4);
    const double next_er = er * zr - ei * zi + local_r;
    const double next_ei = er * zi + ei * zr + local_i;
    er = next_er;
    ei = next_ei;
    sr = nr;
    si = ni;
  }
  return {sr + er, si + ei};
}

template <bool Reversed>
double horner_abs_impl(std::span<const Complex> c, double r) noexcept {
  double s = std::abs(coeff_at<Reversed>(c, 0));
  for (std::size_t k = 1; k < c.size(); ++k) s = s * r + std::abs(coeff_at<Reversed>(c, k));
  return s;
}

}  // namespace

Complex horner(std::span<const Complex> coeffs, Complex z) noexcept {
  if (coeffs.empty()) return 0.0;
  Complex p = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) p = p * z + coeffs[k];
  return p;
}

HornerValue horner_with_derivative(std::span<const Complex> coeffs, Complex z) noexcept {
  if (coeffs.empty()) return {0.0, 0.0};
  return horner_pair<false>(coeffs, z);
}

Complex horner_compensated(std::span<const Complex> coeffs, Complex z) noexcept {
  if (coeffs.empty()) return 0.0;
  return horner_eft<false>(coeffs, z);
}

double horner_abs(std::span<const Complex> coeffs, double abs_z) noexcept {
  if (coeffs.empty()) return 0.0;
  return horner_abs_impl<false>(coeffs, abs_z);
}

NewtonStep newton_step(std::span<const Complex> coeffs, Complex z, bool compensated) noexcept {
  const double n = static_cast<double>(coeffs.size() - 1);
  if (std::abs(z) <= 1.0) {
    const auto [p, dp] = horner_pair<false>(coeffs, z);
    const Complex value = compensated ? horner_eft<false>(coeffs, z) : p;
    return {value / dp, std::abs(value), horner_abs_impl<false>(coeffs, std::abs(z))};
  }
  const Complex w = 1.0 / z;
  const auto [q, dq] = horner_pair<true>(coeffs, w);
  const Complex value = compensated ? horner_eft<true>(coeffs, w) : q;
  // P(z) = z^n q(w) and P'(z) = z^{n-1} (n q(w) - w q'(w)).
  return {z * value / (n * value - w * dq), std::abs(value),
          horner_abs_impl<true>(coeffs, std::abs(w))};
}

double backward_residual(std::span<const Complex> coeffs, Complex z, bool compensated) noexcept {
  if (coeffs.size() < 2) return 0.0;
  double value = 0.0;
  double scale = 0.0;
  if (std::abs(z) <= 1.0) {
    value = std::abs(compensated ? horner_eft<false>(coeffs, z) : horner(coeffs, z));
    scale = horner_abs_impl<false>(coeffs, std::abs(z));
  } else {
    const Complex w = 1.0 / z;
    value = std::abs(compensated ? horner_eft<true>(coeffs, w) : horner_pair<true>(coeffs, w).value);
    scale = horner_abs_impl<true>(coeffs, std::abs(w));
  }
  return scale > 0.0 ? value / scale : 0.0;
}

}  // namespace kac
