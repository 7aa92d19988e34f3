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

#ifndef LIBAGS_RNG_HPP_
#define LIBAGS_RNG_HPP_

#include <cstdint>
#include <random>

namespace libags {

// Portable seeded random source.
//
// The raw stream is MT19937-64 (the engine's output sequence is fixed by the
// C++ standard), seeded with splitmix64(seed ^ splitmix64(stream)). The
// distribution transforms are implemented here rather than taken from
// <random>, whose distributions are implementation-defined:
//
//   uniform()  = (x >> 11) * 2^-53                      in [0, 1)
//   normal()   = Box-Muller, sqrt(-2 ln(1 - u1)) * cos(2 pi u2), one draw
//                per pair of uniforms (the sine branch is discarded)
//   below(n)   = floor(uniform() * n)
//
// Any implementation following these formulas reproduces the same streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Named stream tags so every consumer of a user seed draws from its own
// sequence.
namespace streams {
inline constexpr std::uint64_t kTwoMoonsTrain = 1;
inline constexpr std::uint64_t kTwoMoonsTest = 2;
inline constexpr std::uint64_t kTwoMoonsCandidates = 3;
inline constexpr std::uint64_t kRff = 4;
inline constexpr std::uint64_t kRegions = 5;
inline constexpr std::uint64_t kRandomBaseline = 6;
inline constexpr std::uint64_t kNoiseBaseline = 7;
}  // namespace streams

}  // namespace libags

#endif  // LIBAGS_RNG_HPP_
