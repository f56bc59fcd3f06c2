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

#include "spinegrow/firing.hpp"

#include <cmath>

#include "spinegrow/errors.hpp"

namespace spinegrow {

double membrane_step(double u_prev, double pulse_sum, double noise_mu, RandomStream& rng,
                     const SimParams& p) {
  const double lambda = std::exp(-p.dt / p.tau_m);
  const double sd = p.trigger_noise_cv * std::abs(noise_mu);
  const double n = sd > 0 ? rng.normal(noise_mu, sd) : noise_mu;
  return p.u_rest + (u_prev - p.u_rest + pulse_sum) * lambda + n;
}

double steady_state_potential(double u_rest, double noise_mu, double tau_m, double dt) {
  if (!(tau_m > 0)) throw DomainError("steady_state_potential: tau_m must be positive");
  if (!(dt > 0)) throw DomainError("steady_state_potential: dt must be positive");
  return u_rest + noise_mu / (1.0 - std::exp(-dt / tau_m));
}

double normalize_potential(double u, const SimParams& p) {
  return (u - p.u_rest) / (p.u_threshold - p.u_rest);
}

double spike_probability(double x, double k, double x0) {
  return 1.0 / (1.0 + std::exp(-k * (x - x0)));
}

double rest_probability_from_period(double cdf_target, double f0_per_ms, double dt) {
  if (!(cdf_target > 0 && cdf_target < 1))
    throw DomainError("rest_probability_from_period: cdf_target must lie in (0, 1)");
  const double trials = f0_per_ms * dt;
  if (!(trials > 0 && trials < 1))
    throw DomainError("rest_probability_from_period: need 0 < f0*dt < 1");
  // 1 - (1-c)^(f0 dt), written to keep precision for tiny c
  return -std::expm1(trials * std::log1p(-cdf_target));
}

double solve_sigmoid_k(double s_target, double x, double x0) {
  if (!(s_target > 0 && s_target < 1))
    throw DomainError("solve_sigmoid_k: target probability must lie in (0, 1)");
  if (x == x0) throw DomainError("solve_sigmoid_k: x equals the midpoint");
  return (std::log(s_target) - std::log1p(-s_target)) / (x - x0);
}

bool spike_decision(double u, const SimParams& p, RandomStream& rng) {
  if (u >= p.u_threshold) return true;
  return rng.bernoulli(spike_probability(normalize_potential(u, p), p.sigmoid_k, p.sigmoid_x0));
}

}  // namespace spinegrow
