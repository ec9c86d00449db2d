// pfl/rng.hpp

// Copyright 2026  pfl authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PFL_RNG_HPP_
#define PFL_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace pfl {

// Seed plumbing for the generators. Every random decision draws from an
// engine seeded by (master seed, item key, position, purpose), which makes
// outputs independent of evaluation order and of any parallel schedule.
// std::mt19937_64 output is pinned by the standard; the reductions below
// avoid std distributions, whose sequences are implementation-defined.

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t seed_of(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0;
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
  return h;
}

inline std::mt19937_64 engine_for(std::initializer_list<std::uint64_t> parts) {
  return std::mt19937_64(seed_of(parts));
}

// Uniform in [0, 1).
inline double unit_real(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform in [0, n), unbiased via rejection.
inline std::uint64_t below(std::mt19937_64& g, std::uint64_t n) {
  std::uint64_t x, r;
  do {
    x = g();
    r = x % n;
  } while (x - r > ~std::uint64_t{0} - (n - 1));
  return r;
}

inline std::int64_t uniform_int(std::mt19937_64& g, std::int64_t lo,
                                std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  below(g, static_cast<std::uint64_t>(hi - lo) + 1));
}

}  // namespace pfl

#endif  // PFL_RNG_HPP_
