// Copyright 2026 The Authors.
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

#ifndef PERSUASION_RANDOM_H_
#define PERSUASION_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace persuasion {

// SplitMix64 finalizer; used to derive independent substream seeds.
inline std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Reproducible generator: std::mt19937_64 (whose output sequence is fixed by
// the standard) seeded from a hash of a run seed and a path of stream
// indices, e.g. Rng({seed, trial}). Distribution helpers are implemented
// here rather than with <random> distributions so that draws are identical
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::initializer_list<std::uint64_t> path) {
    std::uint64_t state = 0x243f6a8885a308d3ULL;
    for (std::uint64_t part : path) state = MixSeed(state ^ MixSeed(part));
    engine_.seed(state);
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool Bernoulli(double p) { return Uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace persuasion

#endif  // PERSUASION_RANDOM_H_
