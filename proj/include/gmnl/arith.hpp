// Copyright 2026 The gmnl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <numeric>
#include <optional>

namespace gmnl {

/** Non-negative residue of a modulo d. */
inline int mod(long long a, int d) {
  long long r = a % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

inline bool is_prime(int d) {
  if (d < 2) return false;
  for (int k = 2; k * k <= d; ++k) {
    if (d % k == 0) return false;
  }
  return true;
}

/** Multiplicative inverse of a modulo d, if gcd(a, d) = 1. */
inline std::optional<int> mod_inverse(int a, int d) {
  a = mod(a, d);
  if (std::gcd(a, d) != 1) return std::nullopt;
  for (int b = 1; b < d; ++b) {
    if (mod(static_cast<long long>(a) * b, d) == 1) return b;
  }
  return d == 1 ? std::optional<int>(0) : std::nullopt;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace gmnl
