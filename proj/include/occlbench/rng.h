/* Copyright 2026 The Occlbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef OCCLBENCH_RNG_H_
#define OCCLBENCH_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace occlbench {

// Deterministic random source whose output is identical across standard
// library implementations ("occlbench-rng-v1").
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The std distributions are not (their algorithms are
// implementation-defined), so the derived draws are spelled out here:
//
//   UniformIndex(n): draw v until v < 2^64 - (2^64 mod n); return v mod n.
//   UniformDouble(): (v >> 11) * 2^-53, in [0, 1).
//   Normal():        Box-Muller on two UniformDouble draws, cosine branch.
//   Shuffle(xs):     Fisher-Yates from the last index down, swapping xs[i]
//                    with xs[UniformIndex(i + 1)].
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "occlbench-rng-v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  std::uint64_t UniformIndex(std::uint64_t n);
  double UniformDouble();
  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * UniformDouble();
  }
  double Normal(double mean = 0.0, double stddev = 1.0);

  template <typename T>
  void Shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(UniformIndex(i));
      using std::swap;
      swap(xs[i - 1], xs[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Mixes a seed with a string key (FNV-1a over the key, then splitmix64) so
// per-item streams do not depend on processing order.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key);

}  // namespace occlbench

#endif  // OCCLBENCH_RNG_H_
