/*
  Copyright 2026 The spinegrow Authors

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

#pragma once

#include <cstdint>
#include <random>

namespace spinegrow {

/// Seeded random source. The samplers are implemented here rather than via
/// <random> distributions so a seed reproduces the same stream on every
/// standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

  /// Independent seed for sub-stream (`purpose`, `index`) of `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t purpose,
                              std::uint64_t index = 0) noexcept;

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  double normal(double mean, double sd);

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t poisson(double lambda);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spinegrow
