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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kac/coeff_models.hpp"
#include "kac/polynomial.hpp"

namespace kac {

/// One Monte Carlo trial: extremal root moduli of a degree-n polynomial.
struct ExtremalSample {
  std::uint64_t trial_id = 0;
  std::size_t n = 0;
  double x1 = 0.0;  // min |z_k|
  double xn = 0.0;  // max |z_k|
  std::string model;
  std::uint64_t seed = 0;

  friend bool operator==(const ExtremalSample&, const ExtremalSample&) = default;
};

struct Extremes {
  double x1;
  double xn;
};

/// (min |z|, max |z|) over a non-empty root set.
Extremes extremes_of(std::span<const Complex> roots);
inline Extremes extremes_of(const RootSet& roots) { return extremes_of(roots.roots); }

struct TailEstimate {
  double alpha_hat = 0.0;
  std::size_t k_used = 0;
  double standard_error = 0.0;  // alpha_hat / sqrt(k_used)
};

/// Hill estimator from the top k_used log-spacings:
///   alpha = k / sum_{i<=k} (ln X_(i) - ln X_(k+1)), X_(1) >= X_(2) >= ...
/// Throws DegenerateTail when the denominator is zero.
TailEstimate hill_estimator(std::span<const double> samples, std::size_t k_used);

/// floor(sqrt(N)), the default number of upper order statistics.
std::size_t default_hill_k(std::size_t sample_size) noexcept;

/// The tail pipeline's verdict: either an index estimate or the statement
/// that the model confines every root to a bounded region.
struct BoundedSupport {
  double bound;
};
using TailDiagnosis = std::variant<TailEstimate, BoundedSupport>;

TailDiagnosis diagnose_tail(std::span<const double> xn_samples, const CoefficientModel& model);

/// Two-sample Kolmogorov-Smirnov statistic by merge scan over both sorted
/// samples; ties are stepped together.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample KS statistic sup |F_N - F| for a continuous reference CDF.
double ks_against_cdf(std::span<const double> samples, const std::function<double(double)>& cdf);

/// c(alpha) sqrt((n+m)/(n m)) with c(1e-3) = 1.95; the two-sample rejection
/// threshold used throughout.
double ks_two_sample_critical(std::size_t n, std::size_t m, double c_alpha = 1.95) noexcept;

/// Least-squares slope of ln F_N(t) against ln t over the grid, with the
/// right-closed empirical CDF F_N(t) = #{X_i <= t} / N. Grid points where
/// F_N vanishes are skipped; throws InsufficientMass when fewer than three
/// points remain.
double small_t_exponent(std::span<const double> samples, std::span<const double> t_grid);

/// Empirical E[min(X, cap)^p] for each cap.
std::vector<double> truncated_moment_curve(std::span<const double> samples, double p,
                                           std::span<const double> caps);

/// Log-log slope between consecutive caps of a truncated-moment curve.
std::vector<double> log_log_slopes(std::span<const double> caps, std::span<const double> curve);

/// CSV `trial_id,n,x1,xn,model,seed`.
void write_extremal_csv(std::ostream& out, std::span<const ExtremalSample> samples);
std::vector<ExtremalSample> read_extremal_csv(std::istream& in);

}  // namespace kac
