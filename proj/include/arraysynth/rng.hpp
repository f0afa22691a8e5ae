// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace arraysynth {

/// Seeded generator with hand-rolled value mappings, so that a given seed
/// yields the same draw sequence on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  int below(int n) {
    const int v = static_cast<int>(uniform01() * n);
    return v < n ? v : n - 1;
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace arraysynth
