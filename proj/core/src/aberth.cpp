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

// Simultaneous Aberth-Ehrlich iteration.
//
// Each sweep is Jacobi style: every active root's correction is computed
// from the previous sweep's snapshot and all updates land together, so the
// result does not depend on evaluation order. The two O(n^2) kernels (Horner
// of P and P' at every active root, and the pairwise sums
// sum_j 1/(z_i - z_j)) run over structure-of-arrays groups of roots held in
// SIMD lanes; several independent lane vectors per group hide the latency
// of the Horner recurrence.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kac/errors.hpp"
#include "kac/polynomial.hpp"
#include "kac/rng.hpp"
#include "lanes.hpp"

namespace kac {

namespace {

using detail::Lanes;
using detail::kLanes;
using detail::splat;

constexpr std::size_t kVectors = 4;
constexpr std::size_t kGroup = kVectors * kLanes;

// Coefficients listed from the highest power down, in one of two readings:
// forward (powers of z) or reversed (powers of w = 1/z).
struct CoeffStream {
  std::vector<double> re, im, abs;
};

CoeffStream make_stream(std::span<const Complex> c, bool reversed) {
  CoeffStream s;
  const std::size_t len = c.size();
  s.re.resize(len);
  s.im.resize(len);
  s.abs.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const Complex v = reversed ? c[k] : c[len - 1 - k];
    s.re[k] = v.real();
    s.im[k] = v.imag();
    s.abs[k] = std::abs(v);
  }
  return s;
}

struct GroupEval {
  double pr[kGroup], pi[kGroup], dr[kGroup], di[kGroup], scale[kGroup];
};

// P, P' and sum |c||x|^k at up to kGroup points. With Compensated the value
// of P carries its rounding errors in a second recurrence (error-free
// transformations); P' stays plain.
template <bool Compensated>
void horner_group(const CoeffStream& cs, const double* xr, const double* xi, std::size_t m,
                  GroupEval& out) {
  Lanes ur[kVectors], ui[kVectors], ax[kVectors], ar[kVectors], ai[kVectors], br[kVectors],
      bi[kVectors], sa[kVectors], er[kVectors], ei[kVectors];
  for (std::size_t g = 0; g < kVectors; ++g) {
    const std::size_t off = g * kLanes;
    const std::size_t cnt = m > off ? std::min(kLanes, m - off) : 0;
    // Unused lanes evaluate at x = 0; their results are dropped.
    ur[g] = detail::load_lanes(xr + off, cnt, 0.0);
    ui[g] = detail::load_lanes(xi + off, cnt, 0.0);
    for (std::size_t l = 0; l < kLanes; ++l) ax[g][l] = std::hypot(ur[g][l], ui[g][l]);
    ar[g] = splat(cs.re[0]);
    ai[g] = splat(cs.im[0]);
    sa[g] = splat(cs.abs[0]);
    br[g] = splat(0.0);
    bi[g] = splat(0.0);
    er[g] = splat(0.0);
    ei[g] = splat(0.0);
  }
  const std::size_t len = cs.re.size();
  for (std::size_t k = 1; k < len; ++k) {
    const double cr = cs.re[k];
    const double ci = cs.im[k];
    const double ca = cs.abs[k];
    for (std::size_t g = 0; g < kVectors; ++g) {
      const Lanes nbr = br[g] * ur[g] - bi[g] * ui[g] + ar[g];
      const Lanes nbi = br[g] * ui[g] + bi[g] * ur[g] + ai[g];
      br[g] = nbr;
      bi[g] = nbi;
      sa[g] = sa[g] * ax[g] + ca;
      if constexpr (Compensated) {
        Lanes p1, e1, p2, e2, h, e3, nr, e4, q1, f1, q2, f2, s, f3, ni, f4;
        detail::two_prod(ar[g], ur[g], p1, e1);
        detail::two_prod(ai[g], ui[g], p2, e2);
        detail::two_sum(p1, -p2, h, e3);
        detail::two_sum(h, splat(cr), nr, e4);
        detail::two_prod(ar[g], ui[g], q1, f1);
        detail::two_prod(ai[g], ur[g], q2, f2);
        detail::two_sum(q1, q2, s, f3);
        detail::two_sum(s, splat(ci), ni, f4);
        const Lanes local_r = (e1 - e2) + (e3 + e4);
        const Lanes local_i = (f1 + f2) + (f3 + f4);
        const Lanes ner = er[g] * ur[g] - ei[g] * ui[g] + local_r;
        const Lanes nei = er[g] * ui[g] + ei[g] * ur[g] + local_i;
        er[g] = ner;
        ei[g] = nei;
        ar[g] = nr;
        ai[g] = ni;
      } else {
        const Lanes nar = ar[g] * ur[g] - ai[g] * ui[g] + cr;
        const Lanes nai = ar[g] * ui[g] + ai[g] * ur[g] + ci;
        ar[g] = nar;
        ai[g] = nai;
      }
    }
  }
  for (std::size_t g = 0; g < kVectors; ++g) {
    const std::size_t off = g * kLanes;
    if (m <= off) break;
    const std::size_t cnt = std::min(kLanes, m - off);
    detail::store_lanes(ar[g] + er[g], out.pr + off, cnt);
    detail::store_lanes(ai[g] + ei[g], out.pi + off, cnt);
    detail::store_lanes(br[g], out.dr + off, cnt);
    detail::store_lanes(bi[g], out.di + off, cnt);
    detail::store_lanes(sa[g], out.scale + off, cnt);
  }
}

// sum_{j != i} 1 / (z_i - z_j) for up to kGroup roots z_i against all roots.
void pair_sums_group(const double* xr, const double* xi, std::size_t m, const std::vector<double>& zr,
                     const std::vector<double>& zi, double* sr, double* si) {
  Lanes ur[kVectors], ui[kVectors], accr[kVectors], acci[kVectors];
  for (std::size_t g = 0; g < kVectors; ++g) {
    const std::size_t off = g * kLanes;
    const std::size_t cnt = m > off ? std::min(kLanes, m - off) : 0;
    // Padding lanes sit far away so their terms stay finite and are dropped.
    ur[g] = detail::load_lanes(xr + off, cnt, 1e100);
    ui[g] = detail::load_lanes(xi + off, cnt, 0.0);
    accr[g] = splat(0.0);
    acci[g] = splat(0.0);
  }
  const std::size_t n = zr.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double vr = zr[j];
    const double vi = zi[j];
    for (std::size_t g = 0; g < kVectors; ++g) {
      const Lanes dx = ur[g] - vr;
      const Lanes dy = ui[g] - vi;
      // The self term (and an exact coincidence) contributes nothing.
      const Lanes inv = detail::reciprocal_or_zero(dx * dx + dy * dy);
      accr[g] += dx * inv;
      acci[g] -= dy * inv;
    }
  }
  for (std::size_t g = 0; g < kVectors; ++g) {
    const std::size_t off = g * kLanes;
    if (m <= off) break;
    const std::size_t cnt = std::min(kLanes, m - off);
    detail::store_lanes(accr[g], sr + off, cnt);
    detail::store_lanes(acci[g], si + off, cnt);
  }
}

// Starting points on the circles given by the upper convex hull of
// (k, log|c_k|), with a random rotation per circle.
std::vector<Complex> initial_guesses(std::span<const Complex> c, std::uint64_t seed) {
  const std::size_t n = c.size() - 1;
  std::vector<std::size_t> idx;
  std::vector<double> logs(c.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k <= n; ++k) {
    if (std::abs(c[k]) > 0.0) logs[k] = std::log(std::abs(c[k]));
  }
  for (std::size_t k = 0; k <= n; ++k) {
    if (!std::isfinite(logs[k])) continue;
    while (idx.size() >= 2) {
      const std::size_t a = idx[idx.size() - 2];
      const std::size_t b = idx.back();
      // Pop b unless it lies strictly above the chord a-k.
      const double cross = (static_cast<double>(b - a)) * (logs[k] - logs[a]) -
                           (logs[b] - logs[a]) * static_cast<double>(k - a);
      if (cross >= 0.0) idx.pop_back();
      else break;
    }
    idx.push_back(k);
  }

  RandomStream rng(seed, n);
  std::vector<Complex> z;
  z.reserve(n);
  for (std::size_t s = 0; s + 1 < idx.size(); ++s) {
    const std::size_t lo = idx[s];
    const std::size_t hi = idx[s + 1];
    const std::size_t count = hi - lo;
    const double radius = std::exp((logs[lo] - logs[hi]) / static_cast<double>(count));
    const double offset = 2.0 * std::numbers::pi * rng.uniform();
    const double step = 2.0 * std::numbers::pi / static_cast<double>(count);
    for (std::size_t l = 0; l < count; ++l) {
      const double jitter = 0.2 * step * (rng.uniform() - 0.5);
      z.push_back(std::polar(radius, offset + step * static_cast<double>(l) + jitter));
    }
  }
  return z;
}

class AberthSolver {
 public:
  AberthSolver(std::span<const Complex> coeffs, const SolveOptions& opts)
      : coeffs_(coeffs),
        opts_(opts),
        n_(coeffs.size() - 1),
        forward_(make_stream(coeffs, false)),
        backward_(make_stream(coeffs, true)) {}

  RootSet run() {
    const auto start = initial_guesses(coeffs_, opts_.jitter_seed);
    zr_.resize(n_);
    zi_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      zr_[i] = start[i].real();
      zi_[i] = start[i].imag();
    }
    std::vector<std::size_t> everyone(n_);
    for (std::size_t i = 0; i < n_; ++i) everyone[i] = i;

    int sweeps = 0;
    std::vector<std::size_t> active = everyone;
    while (!active.empty() && sweeps < opts_.max_sweeps) {
      ++sweeps;
      active = sweep(active);
    }

    const bool compensated = n_ > opts_.compensated_above || n_ <= opts_.compensated_up_to;
    if (compensated) {
      const auto steps = corrections<true>(everyone);
      for (std::size_t i = 0; i < n_; ++i) {
        zr_[i] -= steps[i].wr;
        zi_[i] -= steps[i].wi;
      }
    }

    RootSet out;
    out.sweeps = sweeps;
    out.roots.resize(n_);
    out.residuals.resize(n_);
    const auto final_eval = compensated ? corrections<true>(everyone) : corrections<false>(everyone);
    for (std::size_t i = 0; i < n_; ++i) {
      out.roots[i] = {zr_[i], zi_[i]};
      const auto& e = final_eval[i];
      out.residuals[i] = e.scale > 0.0 ? e.value_modulus / e.scale : 0.0;
    }
    return out;
  }

 private:
  struct Correction {
    double wr, wi;
    double value_modulus, scale;
  };

  // Aberth corrections for the given roots, all read from the current snapshot.
  template <bool Compensated>
  std::vector<Correction> corrections(const std::vector<std::size_t>& which) {
    const std::size_t m = which.size();
    std::vector<Correction> out(m);
    const double degree = static_cast<double>(n_);

    GroupEval eval;
    double xr[kGroup], xi[kGroup], sr[kGroup], si[kGroup];
    // Inside the unit disk evaluate in z, outside in w = 1/z.
    std::vector<std::size_t> inside, outside;
    inside.reserve(m);
    outside.reserve(m);
    for (std::size_t a = 0; a < m; ++a) {
      const std::size_t i = which[a];
      (zr_[i] * zr_[i] + zi_[i] * zi_[i] <= 1.0 ? inside : outside).push_back(a);
    }

    auto process = [&](const std::vector<std::size_t>& group, bool reversed) {
      for (std::size_t b = 0; b < group.size(); b += kGroup) {
        const std::size_t cnt = std::min(kGroup, group.size() - b);
        for (std::size_t l = 0; l < cnt; ++l) {
          const std::size_t i = which[group[b + l]];
          if (reversed) {
            const Complex w = 1.0 / Complex(zr_[i], zi_[i]);
            xr[l] = w.real();
            xi[l] = w.imag();
          } else {
            xr[l] = zr_[i];
            xi[l] = zi_[i];
          }
        }
        horner_group<Compensated>(reversed ? backward_ : forward_, xr, xi, cnt, eval);
        for (std::size_t l = 0; l < cnt; ++l) {
          const std::size_t i = which[group[b + l]];
          xr[l] = zr_[i];
          xi[l] = zi_[i];
        }
        pair_sums_group(xr, xi, cnt, zr_, zi_, sr, si);
        for (std::size_t l = 0; l < cnt; ++l) {
          const Complex z(xr[l], xi[l]);
          const Complex p(eval.pr[l], eval.pi[l]);
          const Complex dp(eval.dr[l], eval.di[l]);
          Complex newton;
          if (reversed) {
            // P(z) = z^n q(w) and P'(z) = z^{n-1} (n q(w) - w q'(w)).
            const Complex w = 1.0 / z;
            newton = z * p / (degree * p - w * dp);
          } else {
            newton = p / dp;
          }
          Complex step = newton / (1.0 - newton * Complex(sr[l], si[l]));
          if (p == Complex(0.0)) step = 0.0;
          if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
            // Stationary point of P or a near collision: nudge and retry next sweep.
            const double angle = 1.0 + static_cast<double>(b + l);
            step = 1e-3 * (1.0 + std::abs(z)) * Complex(std::cos(angle), std::sin(angle));
          }
          out[group[b + l]] = {step.real(), step.imag(), std::abs(p), eval.scale[l]};
        }
      }
    };
    process(inside, false);
    process(outside, true);
    return out;
  }

  std::vector<std::size_t> sweep(const std::vector<std::size_t>& active) {
    const auto steps = corrections<false>(active);
    const double noise_factor =
        4.0 * static_cast<double>(n_ + 1) * std::numeric_limits<double>::epsilon();
    std::vector<std::size_t> still_active;
    still_active.reserve(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) {
      const std::size_t i = active[a];
      const auto& s = steps[a];
      zr_[i] -= s.wr;
      zi_[i] -= s.wi;
      const double step = std::hypot(s.wr, s.wi);
      const double modulus = std::hypot(zr_[i], zi_[i]);
      const bool small_step = step <= opts_.tolerance * (1.0 + modulus);
      // P(z) already at the rounding level of plain Horner.
      const bool at_noise = s.value_modulus <= noise_factor * s.scale;
      if (!(small_step || at_noise)) still_active.push_back(i);
    }
    return still_active;
  }

  std::span<const Complex> coeffs_;
  const SolveOptions& opts_;
  std::size_t n_;
  CoeffStream forward_;
  CoeffStream backward_;
  std::vector<double> zr_, zi_;
};

}  // namespace

RootSet solve(const Polynomial& p, const SolveOptions& opts) {
  if (p.degree() < 1) throw Error(ErrorCode::DegenerateInput, "solve needs degree >= 1");
  const auto all = p.coeffs();

  // Exact zeros at the origin are split off first.
  std::size_t zeros_at_origin = 0;
  while (all[zeros_at_origin] == Complex(0.0)) ++zeros_at_origin;
  const auto c = all.subspan(zeros_at_origin);
  const std::size_t n = c.size() - 1;

  RootSet out;
  if (n == 1) {
    out.roots = {-c[0] / c[1]};
    out.residuals = {backward_residual(c, out.roots[0], false)};
  } else if (n > 1) {
    out = AberthSolver(c, opts).run();
  }
  out.roots.insert(out.roots.end(), zeros_at_origin, Complex(0.0));
  out.residuals.insert(out.residuals.end(), zeros_at_origin, 0.0);

  const double worst = out.worst_residual();
  if (!(worst <= opts.certification_threshold)) {
    std::ostringstream msg;
    msg << "degree " << p.degree() << ": worst backward residual " << worst << " above threshold "
        << opts.certification_threshold << " after " << out.sweeps << " sweeps";
    throw NonConvergenceError(msg.str(), worst);
  }
  return out;
}

}  // namespace kac
