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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spinegrow {

/// Every model constant of a run. Units: mV, ms, map units (um).
struct SimParams {
  // membrane
  double u_rest = -70.0;
  double u_threshold = -54.0;
  double pulse_amplitude = 10.0;
  double tau_m = 520.0;
  // stochastic trigger
  double sigmoid_k = 13.69;
  double sigmoid_x0 = 1.0;
  double natural_period = 200.0;
  double neuron_delay = 20.0;
  double mu_trigger_noise = 0.02;
  /// Std-dev of the per-tick membrane noise as a multiple of its mean.
  double trigger_noise_cv = 1.0;
  // growth
  double sigma_env_noise = 1.0;
  /// Converts sigma_env_noise (quoted in units/s^2) to units/ms^2 per tick.
  double env_noise_scale = 1e-6;
  double stdp_A = 1.0;
  double stdp_tau = 10.0;
  double stdp_window = 100.0;
  double window_attenuation = 0.01;
  /// Intensity carried by a soma's broadcast pulse (multiplies the kernel).
  double pulse_intensity = 1.0;
  double drag_coeff = 0.8;
  double mass = 1.0;
  double eta = 1.0;
  double dt = 1.0;
  double connect_radius = 2.0;
  double spine_segment_spacing = 10.0;
};

struct Violation {
  std::string field;
  std::string rule;
};

using ValidationReport = std::vector<Violation>;

/// Empty iff every invariant of `p` holds; one entry per violated rule.
ValidationReport validate_params(const SimParams& p);

/// Throws ConfigError listing every violation when the report is non-empty.
void require_valid(const SimParams& p);

/// tau = R*C. MOhm * nF = ms.
double membrane_time_constant(double r_megaohm, double c_nanofarad);

/// Names of all settable fields, in declaration order.
std::span<const std::string_view> param_names();

bool has_param(std::string_view key);
double get_param(const SimParams& p, std::string_view key);

/// Throws ConfigError on an unknown key.
void set_param(SimParams& p, std::string_view key, double value);

/// Applies one "key=value" override. Throws ConfigError on unknown keys or
/// unparsable values.
void apply_override(SimParams& p, std::string_view assignment);

/// Reads a JSON object whose keys are SimParams field names. Missing keys
/// keep their defaults; unknown keys are rejected.
SimParams load_params_file(const std::filesystem::path& path, SimParams base = {});
SimParams params_from_json_text(std::string_view text, SimParams base = {});
std::string params_to_json_text(const SimParams& p);

}  // namespace spinegrow
