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

#include <array>
#include <complex>
#include <cstdint>

namespace kac {

/// Philox4x32-10 block function: maps a 128-bit counter and a 64-bit key to
/// 128 pseudo-random bits. Pure; no state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// A stream is identified by (key, stream_id). The key is the experiment's
/// master seed and the stream id is usually a trial id, so every trial owns a
/// disjoint slice of the Philox counter space and draws do not depend on
/// which worker runs the trial or in what order.
class RandomStream {
 public:
  RandomStream(std::uint64_t key, std::uint64_t stream_id) noexcept;

  static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t trial_id) noexcept {
    return RandomStream(master_seed, trial_id);
  }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of 32-bit words consumed so far.
  std::uint64_t position() const noexcept { return block_ * 4 + idx_ - 4; }

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform() noexcept;
  /// Standard normal via Box-Muller (one pair per two uniforms; the second
  /// value is kept for the next call).
  double normal() noexcept;
  /// Complex normal with independent N(0, 1/2) parts, so E|z|^2 = 1.
  std::complex<double> complex_normal() noexcept;

 private:
  void refill() noexcept;

  std::uint64_t key_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned idx_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace kac
