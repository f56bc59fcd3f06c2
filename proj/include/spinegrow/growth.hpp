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
#include <optional>
#include <span>

#include "spinegrow/params.hpp"
#include "spinegrow/random.hpp"
#include "spinegrow/vec2.hpp"

namespace spinegrow {

using NeuronId = std::int64_t;
using AgentId = std::int64_t;

/// Kinematic state of one growth cone (the tip of a dendrite spine).
struct ConeState {
  AgentId id = 0;
  NeuronId parent_neuron = 0;
  Vec2 position;
  Vec2 velocity;
  Vec2 acceleration;
  std::optional<NeuronId> connected_to;
  std::optional<double> last_own_spike;  ///< ms
  double distance_since_segment = 0.0;
};

/// Exponential STDP kernel. `delta_t` = own spike time - incoming pulse time;
/// positive (source fired first) attracts. delta_t == 0 maps to +A.
double stdp_kernel(double delta_t, double A, double tau);

/// 1 inside the closed window |delta_t| <= stdp_window, else the attenuation.
double window_attenuation(double delta_t, const SimParams& p);

/// eta * stdp / d^2 along the unit vector from cone to source. Negative
/// kernel values produce no force. Throws GeometryError when d == 0.
Vec2 attraction_force(double stdp_value, Vec2 cone_pos, Vec2 source_pos, double eta);

/// Magnitude ~ N(0, sigma), direction ~ U[0, 2pi). sigma == 0 draws nothing.
Vec2 sample_env_noise(double sigma, RandomStream& rng);

/// Quadratic drag -|v|^2 C_D v_hat.
Vec2 drag(Vec2 velocity, double drag_coeff);

/// drag() capped so that one explicit step of length dt can at most bring
/// the velocity to rest; it never reverses or amplifies the motion.
Vec2 limited_drag(Vec2 velocity, double drag_coeff, double mass, double dt);

Vec2 total_force(std::span<const Vec2> attractions, Vec2 noise, Vec2 drag_force);

/// Explicit step, position first with the stale velocity:
///   p_t = p_{t-1} + v_{t-1} dt;  v_t = v_{t-1} + a_{t-1} dt;  a_t = F / m.
/// Throws NumericError if the force or the resulting state is not finite.
ConeState integrate_step(const ConeState& cone, Vec2 force, const SimParams& p);

/// One tick of a free cone: drag is evaluated on the velocity the step is
/// about to produce (v + a dt), limited, added to `external`, then
/// integrate_step runs.
ConeState advance_cone(const ConeState& cone, Vec2 external, const SimParams& p);

}  // namespace spinegrow
