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

#include "spinegrow/params.hpp"
#include "spinegrow/random.hpp"

namespace spinegrow {

struct MembraneState {
  double u = -70.0;  ///< mV
  std::int64_t last_update = 0;
  bool fired_this_tick = false;
};

/// One leaky integrate-and-fire update of length p.dt.
///
/// Pulses delivered this tick are summed into the deviation from rest before
/// the exponential decay, then Gaussian noise n ~ N(noise_mu, cv*noise_mu)
/// is added:
///
///   u = u_rest + (u_prev - u_rest + pulse_sum) * exp(-dt/tau_m) + n
///
/// No random draw is made when the noise variance is zero.
double membrane_step(double u_prev, double pulse_sum, double noise_mu, RandomStream& rng,
                     const SimParams& p);

/// Asymptote of the noise-driven membrane: u_rest + mu / (1 - exp(-dt/tau)).
double steady_state_potential(double u_rest, double noise_mu, double tau_m, double dt);

/// 0 at rest, 1 at threshold; not clamped.
double normalize_potential(double u, const SimParams& p);

/// Logistic 1 / (1 + exp(-k (x - x0))).
double spike_probability(double x, double k, double x0);

/// Per-trial Bernoulli probability p such that a spike happens within
/// k = 1/(f0 dt) trials with probability `cdf_target`.
double rest_probability_from_period(double cdf_target, double f0_per_ms, double dt);

/// Growth rate k with spike_probability(x, k, x0) == s_target.
double solve_sigmoid_k(double s_target, double x, double x0);

/// Threshold crossing always fires; below threshold one Bernoulli draw with
/// the sigmoid probability of the normalized potential.
bool spike_decision(double u, const SimParams& p, RandomStream& rng);

}  // namespace spinegrow
