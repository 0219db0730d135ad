/*
 * Copyright 2026 The semsynth Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SEMSYNTH_RNG_H_
#define SEMSYNTH_RNG_H_

#include <array>
#include <cstdint>

namespace semsynth {

// One SplitMix64 step applied to `state`; returns the mixed output.
std::uint64_t SplitMix64Next(std::uint64_t& state);

// SplitMix64 output for a single input value (state advanced once from x).
inline std::uint64_t SplitMix64(std::uint64_t x) { return SplitMix64Next(x); }

// xoshiro256** 1.0 (Blackman & Vigna). State is filled from a SplitMix64
// stream started at the 64-bit seed, so output is identical on every
// platform and compiler.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t Next();
  std::uint64_t operator()() { return Next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  // Advances the state by 2^128 draws. Used to split independent substreams.
  void Jump();

  // Uniform integer in [lo, hi], inclusive, without modulo bias.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 bits of precision.
  double UniformUnit();

  const std::array<std::uint64_t, 4>& state() const { return s_; }

 private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace semsynth

#endif  // SEMSYNTH_RNG_H_
