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
#include <span>

namespace kac {

using Complex = std::complex<double>;

/// Plain Horner for sum c_k z^k, coefficients in ascending order.
Complex horner(std::span<const Complex> coeffs, Complex z) noexcept;

/// Value and first derivative in one pass.
struct HornerValue {
  Complex value;
  Complex derivative;
};
HornerValue horner_with_derivative(std::span<const Complex> coeffs, Complex z) noexcept;

/// Compensated Horner: error-free transformations on every product and sum,
/// the rounding errors are carried in a second Horner recurrence and added
/// back at the end. Result is as accurate as if evaluated in twice the
/// working precision, then rounded.
Complex horner_compensated(std::span<const Complex> coeffs, Complex z) noexcept;

/// sum |c_k| |z|^k, the scale against which rounding errors are measured.
double horner_abs(std::span<const Complex> coeffs, double abs_z) noexcept;

/// Newton correction p(z) / p'(z). For |z| > 1 the polynomial is evaluated
/// in the reversed variable w = 1/z so that degree-n powers never overflow.
/// `scale_out` receives the matching rounding-error scale: the returned
/// `value_modulus / scale_out` is the backward residual at z.
struct NewtonStep {
  Complex correction;
  double value_modulus = 0.0;
  double scale = 0.0;
};
NewtonStep newton_step(std::span<const Complex> coeffs, Complex z, bool compensated) noexcept;

/// |P(z)| / sum |c_j| |z|^j, computed without overflow.
double backward_residual(std::span<const Complex> coeffs, Complex z, bool compensated) noexcept;

}  // namespace kac
