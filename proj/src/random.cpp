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

#include "spinegrow/random.hpp"

#include <cmath>
#include <numbers>

namespace spinegrow {
namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomStream::derive(std::uint64_t seed, std::uint64_t purpose,
                                   std::uint64_t index) noexcept {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s = h ^ (purpose * 0xd1b54a32d192ed03ULL);
  h = splitmix64(s);
  s = h ^ (index * 0x8cb92ba72f3d8dd7ULL);
  return splitmix64(s);
}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // rejection keeps the draw unbiased
  const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
  std::uint64_t x = engine_();
  if (span != 0)
    while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(span == 0 ? x : x % span);
}

double RandomStream::normal(double mean, double sd) {
  if (has_spare_) {
    has_spare_ = false;
    return mean + sd * spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  has_spare_ = true;
  return mean + sd * r * std::cos(th);
}

std::uint64_t RandomStream::poisson(double lambda) {
  if (!(lambda > 0)) return 0;
  // sum of Knuth draws over chunks keeps exp(-chunk) away from underflow
  std::uint64_t total = 0;
  while (lambda > 0) {
    const double chunk = lambda > 30.0 ? 30.0 : lambda;
    lambda -= chunk;
    const double L = std::exp(-chunk);
    double prod = uniform();
    while (prod > L) {
      ++total;
      prod *= uniform();
    }
  }
  return total;
}

}  // namespace spinegrow
