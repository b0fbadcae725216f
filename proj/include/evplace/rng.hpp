// Copyright 2026 The evplace Authors
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

#ifndef EVPLACE_RNG_H_
#define EVPLACE_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace evplace {

// Deterministic random stream. All helpers are implemented on top of raw
// mt19937_64 draws instead of std::*_distribution so that sequences are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of randomness.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi], inclusive. Rejection sampling keeps the
  // result unbiased without depending on library-specific distributions.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // First k entries of a uniformly random permutation of {0, ..., n-1}.
  std::vector<int> sample_without_replacement(int n, int k);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(
          uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Independent stream derived from a base seed and a label, so that adding a
// new consumer does not shift the draws seen by existing ones.
Rng substream(std::uint64_t seed, std::string_view name);

}  // namespace evplace

#endif  // EVPLACE_RNG_H_
