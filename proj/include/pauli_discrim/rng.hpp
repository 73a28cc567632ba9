// Copyright 2026 The pauli-discrim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace pauli_discrim {

/// splitmix64: 64-bit state, one multiply/xorshift step per output.
/// Every stochastic routine in this library draws from an instance seeded
/// explicitly, so a run is reproducible from the seed alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller. Draws a fresh uniform pair per call so
  /// the underlying u64 stream stays independent of call parity.
  double next_gaussian() {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps the log finite
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Child generator with an independent stream.
  SplitMix64 split() { return SplitMix64(next_u64()); }

  /// Uniform point on the probability 4-simplex (four unit exponentials,
  /// normalized), i.e. a random Pauli-channel weight vector.
  std::array<double, 4> next_simplex4() {
    std::array<double, 4> w{};
    double sum = 0.0;
    for (double& x : w) {
      x = -std::log(1.0 - next_double());
      sum += x;
    }
    for (double& x : w) x /= sum;
    return w;
  }

 private:
  std::uint64_t state_;
};

}  // namespace pauli_discrim
