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

// Fixed-width SIMD lanes for the solver kernels. GCC/Clang vector extensions
// give portable code; AVX-512 intrinsics are used where they buy a fused
// multiply-subtract or a fast reciprocal.

#include <cstddef>

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

namespace kac::detail {

inline constexpr std::size_t kLanes = 8;

typedef double Lanes __attribute__((vector_size(kLanes * sizeof(double))));
typedef long long LaneMask __attribute__((vector_size(kLanes * sizeof(double))));

inline Lanes splat(double v) { return Lanes{} + v; }

inline Lanes load_lanes(const double* src, std::size_t m, double pad) {
  Lanes v;
  for (std::size_t l = 0; l < kLanes; ++l) v[l] = l < m ? src[l] : pad;
  return v;
}

inline void store_lanes(const Lanes& v, double* dst, std::size_t m) {
  for (std::size_t l = 0; l < m; ++l) dst[l] = v[l];
}

/// Exact a*b - c rounded once.
inline Lanes fused_mul_sub(Lanes a, Lanes b, Lanes c) {
#if defined(__AVX512F__)
  return _mm512_fmsub_pd(a, b, c);
#else
  Lanes r;
  for (std::size_t l = 0; l < kLanes; ++l) r[l] = __builtin_fma(a[l], b[l], -c[l]);
  return r;
#endif
}

/// 1/x for x > 0 and 0 where x == 0 (or x is a padding lane that overflowed
/// to infinity).
inline Lanes reciprocal_or_zero(Lanes x) {
  const LaneMask keep = x > 0.0;
#if defined(__AVX512F__)
  // 14-bit estimate refined by two Newton steps (~56 bits).
  Lanes r = _mm512_rcp14_pd(x);
  r = r * (2.0 - x * r);
  r = r * (2.0 - x * r);
  return (Lanes)((LaneMask)r & keep);
#else
  return (Lanes)((LaneMask)(1.0 / x) & keep);
#endif
}

/// Error-free transformations on lanes: a + b = s + e, a * b = p + e exactly.
inline void two_sum(Lanes a, Lanes b, Lanes& s, Lanes& e) {
  s = a + b;
  const Lanes bv = s - a;
  e = (a - (s - bv)) + (b - bv);
}

inline void two_prod(Lanes a, Lanes b, Lanes& p, Lanes& e) {
  p = a * b;
  e = fused_mul_sub(a, b, p);
}

}  // namespace kac::detail
