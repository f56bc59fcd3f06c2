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

#include "spinegrow/growth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinegrow/errors.hpp"

namespace spinegrow {

double stdp_kernel(double delta_t, double A, double tau) {
  const double mag = A * std::exp(-std::abs(delta_t) / tau);
  return delta_t >= 0 ? mag : -mag;
}

double window_attenuation(double delta_t, const SimParams& p) {
  return std::abs(delta_t) <= p.stdp_window ? 1.0 : p.window_attenuation;
}

Vec2 attraction_force(double stdp_value, Vec2 cone_pos, Vec2 source_pos, double eta) {
  const Vec2 diff = source_pos - cone_pos;
  const double d2 = diff.norm2();
  if (d2 == 0.0) throw GeometryError("attraction_force: cone sits on the source");
  const double s = std::max(stdp_value, 0.0);
  if (s == 0.0) return {};
  const double d = std::sqrt(d2);
  return diff * (eta * s / (d2 * d));
}

Vec2 sample_env_noise(double sigma, RandomStream& rng) {
  if (!(sigma > 0)) return {};
  const double m = rng.normal(0.0, sigma);
  const double th = rng.uniform() * 2.0 * std::numbers::pi;
  return {m * std::cos(th), m * std::sin(th)};
}

Vec2 drag(Vec2 velocity, double drag_coeff) {
  // -|v|^2 C_D v/|v|
  return velocity * (-drag_coeff * velocity.norm());
}

Vec2 limited_drag(Vec2 velocity, double drag_coeff, double mass, double dt) {
  const Vec2 f = drag(velocity, drag_coeff);
  const double cap = mass * velocity.norm() / dt;
  const double mag = f.norm();
  if (mag <= cap || mag == 0.0) return f;
  return f * (cap / mag);
}

Vec2 total_force(std::span<const Vec2> attractions, Vec2 noise, Vec2 drag_force) {
  Vec2 sum = noise + drag_force;
  for (const Vec2& a : attractions) sum += a;
  return sum;
}

ConeState integrate_step(const ConeState& cone, Vec2 force, const SimParams& p) {
  auto fail = [&](const char* what) {
    std::ostringstream os;
    os << "integrate_step: " << what << " (cone " << cone.id << ", force " << force.x << ","
       << force.y << ")";
    throw NumericError(os.str());
  };
  if (!force.finite()) fail("non-finite force");
  ConeState next = cone;
  next.position = cone.position + cone.velocity * p.dt;
  next.velocity = cone.velocity + cone.acceleration * p.dt;
  next.acceleration = force / p.mass;
  next.distance_since_segment += distance(cone.position, next.position);
  if (!next.position.finite() || !next.velocity.finite()) fail("state diverged");
  return next;
}

ConeState advance_cone(const ConeState& cone, Vec2 external, const SimParams& p) {
  const Vec2 v_next = cone.velocity + cone.acceleration * p.dt;
  return integrate_step(cone, external + limited_drag(v_next, p.drag_coeff, p.mass, p.dt), p);
}

}  // namespace spinegrow
