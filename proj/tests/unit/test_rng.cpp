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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "kac/rng.hpp"
#include "oracles.hpp"

using kac::RandomStream;

TEST_CASE("philox known-answer vectors") {
  using A = std::array<std::uint32_t, 4>;
  CHECK(kac::philox4x32({0, 0, 0, 0}, {0, 0}) == A{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(kac::philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(kac::philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("philox agrees with the reference rounds") {
  RandomStream src(7, 7);
  for (int i = 0; i < 1000; ++i) {
    const std::array<std::uint32_t, 4> c = {src.next_u32(), src.next_u32(), src.next_u32(), src.next_u32()};
    const std::array<std::uint32_t, 2> k = {src.next_u32(), src.next_u32()};
    REQUIRE(kac::philox4x32(c, k) == oracle::philox_reference(c, k));
  }
}

TEST_CASE("stream layout: block index in words 0-1, stream id in words 2-3") {
  RandomStream s(0x1122334455667788ULL, 0x99aabbccddeeff00ULL);
  const std::array<std::uint32_t, 2> key = {0x55667788u, 0x11223344u};
  for (std::uint32_t block = 0; block < 3; ++block) {
    const auto expect = oracle::philox_reference({block, 0, 0xddeeff00u, 0x99aabbccu}, key);
    for (auto w : expect) CHECK(s.next_u32() == w);
  }
  CHECK(s.position() == 12);
}

TEST_CASE("streams are reproducible and independent of interleaving") {
  RandomStream a = RandomStream::for_trial(42, 3);
  RandomStream b = RandomStream::for_trial(42, 3);
  RandomStream other = RandomStream::for_trial(42, 4);
  for (int i = 0; i < 100; ++i) {
    other.next_u64();
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("derived stream prefixes never collide") {
  std::vector<std::uint64_t> prefixes;
  prefixes.reserve(1000000);
  for (std::uint64_t trial = 0; trial < 1000000; ++trial)
    prefixes.push_back(RandomStream::for_trial(2024, trial).next_u64());
  std::sort(prefixes.begin(), prefixes.end());
  CHECK(std::adjacent_find(prefixes.begin(), prefixes.end()) == prefixes.end());
}

TEST_CASE("uniform, normal and complex normal moments") {
  RandomStream s(1, 0);
  const int n = 200000;
  double su = 0, mn = 1, mx = 0, sn = 0, sn2 = 0, sc2 = 0, scr = 0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    su += u;
    mn = std::min(mn, u);
    mx = std::max(mx, u);
    const double g = s.normal();
    sn += g;
    sn2 += g * g;
    const auto z = s.complex_normal();
    sc2 += std::norm(z);
    scr += z.real() * z.real();
  }
  CHECK(mn > 0.0);
  CHECK(mx < 1.0);
  CHECK(std::abs(su / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(sn / n) < 4 / std::sqrt(double(n)));
  CHECK(std::abs(sn2 / n - 1.0) < 0.02);
  CHECK(std::abs(sc2 / n - 1.0) < 0.02);
  CHECK(std::abs(scr / n - 0.5) < 0.01);
}
