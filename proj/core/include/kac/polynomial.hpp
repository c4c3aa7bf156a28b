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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "kac/horner.hpp"

namespace kac {

/// P(z) = sum_{k=0}^{n} c_k z^k with c_n != 0.
class Polynomial {
 public:
  /// Throws DegenerateInput if `coeffs` is empty or the leading coefficient
  /// is zero (or below the underflow guard).
  explicit Polynomial(std::vector<Complex> coeffs);

  /// c_n * prod (z - root_k), expanded in plain double arithmetic.
  static Polynomial from_roots(std::span<const Complex> roots, Complex leading = 1.0);

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  const Complex& operator[](std::size_t k) const noexcept { return coeffs_[k]; }
  Complex leading() const noexcept { return coeffs_.back(); }

  Complex operator()(Complex z) const noexcept { return horner(coeffs_, z); }

  Polynomial scaled(Complex factor) const;
  /// First k+1 coefficients, i.e. the degree-k truncation.
  Polynomial truncated(std::size_t degree) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Complex> coeffs_;
};

/// z^n P(1/z): the coefficient sequence reversed. Throws ZeroConstantTerm
/// when c_0 == 0 (the reversal would drop degree).
Polynomial reverse(const Polynomial& p);

struct SolveOptions {
  /// Every returned root must have backward residual at most this.
  double certification_threshold = 1e-10;
  int max_sweeps = 200;
  /// Per-root stop once |Aberth correction| < tolerance * (1 + |z|).
  double tolerance = 1e-14;
  /// Above this degree the final polishing step and the residual
  /// certificates use compensated Horner.
  std::size_t compensated_above = 256;
  /// Same at or below this degree, where it costs nothing and sharpens
  /// clustered roots.
  std::size_t compensated_up_to = 64;
  /// Seeds the phase jitter of the initial circles.
  std::uint64_t jitter_seed = 0x6b61635f6a697474ULL;
};

struct RootSet {
  std::vector<Complex> roots;
  /// |P(z_k)| / sum_j |c_j| |z_k|^j for each root.
  std::vector<double> residuals;
  int sweeps = 0;

  std::size_t size() const noexcept { return roots.size(); }
  double worst_residual() const noexcept;
};

/// All n complex zeros by simultaneous Aberth-Ehrlich iteration. Pure and
/// deterministic in (p, opts). Throws NonConvergenceError if any residual
/// stays above the certification threshold after the sweep budget.
RootSet solve(const Polynomial& p, const SolveOptions& opts = {});

/// Number of zeros strictly inside |z - center| < radius. Counts the solved
/// roots and cross-checks against the argument principle; throws
/// BoundaryRoot if a root sits within 1e-9 * radius of the circle and
/// CountMismatch if the two counts disagree.
int count_zeros_in_disk(const Polynomial& p, Complex center, double radius,
                        const SolveOptions& opts = {});

/// Winding number of P around the circle by trapezoid quadrature of P'/P,
/// doubling nodes (from 64 up to 2^16) until the rounded value repeats and
/// sits within 0.05 of an integer. Throws QuadratureNonConvergence otherwise.
int argument_principle_count(const Polynomial& p, Complex center, double radius);

/// One coefficient per line as `re im`, ascending index.
Polynomial read_polynomial(std::istream& in);
void write_polynomial(std::ostream& out, const Polynomial& p);

/// CSV with header `re,im,modulus,residual`.
void write_roots_csv(std::ostream& out, const RootSet& roots);

}  // namespace kac
