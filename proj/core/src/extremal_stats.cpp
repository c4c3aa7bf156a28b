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

#include "kac/extremal_stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "kac/errors.hpp"

namespace kac {

Extremes extremes_of(std::span<const Complex> roots) {
  if (roots.empty()) throw Error(ErrorCode::InvalidArgument, "extremes_of needs at least one root");
  Extremes e{std::abs(roots[0]), std::abs(roots[0])};
  for (const Complex& z : roots.subspan(1)) {
    const double m = std::abs(z);
    e.x1 = std::min(e.x1, m);
    e.xn = std::max(e.xn, m);
  }
  return e;
}

TailEstimate hill_estimator(std::span<const double> samples, std::size_t k_used) {
  if (k_used < 1 || k_used >= samples.size())
    throw Error(ErrorCode::InvalidArgument, "hill_estimator needs 1 <= k_used < sample size");
  std::vector<double> top(samples.begin(), samples.end());
  for (double v : top)
    if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "hill_estimator needs positive samples");
  // Top k_used + 1 values, descending.
  std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k_used + 1), top.end(),
                    std::greater<>());
  const double threshold = std::log(top[k_used]);
  double sum = 0.0;
  for (std::size_t i = 0; i < k_used; ++i) sum += std::log(top[i]) - threshold;
  if (!(sum > 0.0))
    throw Error(ErrorCode::DegenerateTail, "top order statistics are all equal");
  TailEstimate est;
  est.k_used = k_used;
  est.alpha_hat = static_cast<double>(k_used) / sum;
  est.standard_error = est.alpha_hat / std::sqrt(static_cast<double>(k_used));
  return est;
}

std::size_t default_hill_k(std::size_t sample_size) noexcept {
  auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(sample_size))));
  while (k * k > sample_size) --k;
  while ((k + 1) * (k + 1) <= sample_size) ++k;
  return k;
}

TailDiagnosis diagnose_tail(std::span<const double> xn_samples, const CoefficientModel& model) {
  if (const auto bound = model.root_modulus_bound()) return BoundedSupport{*bound};
  return hill_estimator(xn_samples, default_hill_k(xn_samples.size()));
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "ks_two_sample needs data");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_against_cdf(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "ks_against_cdf needs data");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double c_alpha) noexcept {
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return c_alpha * std::sqrt((dn + dm) / (dn * dm));
}

double small_t_exponent(std::span<const double> samples, std::span<const double> t_grid) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "small_t_exponent needs samples");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  std::vector<double> lx, ly;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid values must be positive");
    const auto count = static_cast<double>(std::upper_bound(x.begin(), x.end(), t) - x.begin());
    if (count == 0.0) continue;
    lx.push_back(std::log(t));
    ly.push_back(std::log(count / n));
  }
  if (lx.size() < 3)
    throw Error(ErrorCode::InsufficientMass, "fewer than three grid points carry empirical mass");
  const double m = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid must contain distinct points");
  return sxy / sxx;
}

std::vector<double> truncated_moment_curve(std::span<const double> samples, double p,
                                           std::span<const double> caps) {
  if (!(p > 0.0)) throw Error(ErrorCode::InvalidArgument, "moment order must be positive");
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "truncated_moment_curve needs data");
  for (std::size_t i = 1; i < caps.size(); ++i)
    if (!(caps[i] > caps[i - 1])) throw Error(ErrorCode::InvalidArgument, "caps must increase");
  std::vector<double> curve;
  curve.reserve(caps.size());
  for (double cap : caps) {
    if (!(cap > 0.0)) throw Error(ErrorCode::InvalidArgument, "caps must be positive");
    double sum = 0.0;
    for (double v : samples) sum += std::pow(std::min(v, cap), p);
    curve.push_back(sum / static_cast<double>(samples.size()));
  }
  return curve;
}

std::vector<double> log_log_slopes(std::span<const double> caps, std::span<const double> curve) {
  if (caps.size() != curve.size()) throw Error(ErrorCode::InvalidArgument, "size mismatch");
  std::vector<double> slopes;
  for (std::size_t i = 1; i < caps.size(); ++i)
    slopes.push_back(std::log(curve[i] / curve[i - 1]) / std::log(caps[i] / caps[i - 1]));
  return slopes;
}

void write_extremal_csv(std::ostream& out, std::span<const ExtremalSample> samples) {
  const auto old = out.precision(17);
  out << "trial_id,n,x1,xn,model,seed\n";
  for (const auto& s : samples)
    out << s.trial_id << ',' << s.n << ',' << s.x1 << ',' << s.xn << ',' << s.model << ',' << s.seed
        << '\n';
  out.precision(old);
}

std::vector<ExtremalSample> read_extremal_csv(std::istream& in) {
  std::vector<ExtremalSample> out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("trial_id,n,x1,xn,model,seed", 0) != 0)
        throw Error(ErrorCode::ParseError, "expected header trial_id,n,x1,xn,model,seed");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 6 fields");
    try {
      ExtremalSample s;
      s.trial_id = std::stoull(fields[0]);
      s.n = std::stoull(fields[1]);
      s.x1 = std::stod(fields[2]);
      s.xn = std::stod(fields[3]);
      s.model = fields[4];
      s.seed = std::stoull(fields[5]);
      out.push_back(std::move(s));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number");
    }
  }
  return out;
}

}  // namespace kac
