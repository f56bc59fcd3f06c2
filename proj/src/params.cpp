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

#include "spinegrow/params.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinegrow/errors.hpp"

namespace spinegrow {
namespace {

struct Field {
  std::string_view name;
  double SimParams::*member;
};

constexpr std::array kFields{
    Field{"u_rest", &SimParams::u_rest},
    Field{"u_threshold", &SimParams::u_threshold},
    Field{"pulse_amplitude", &SimParams::pulse_amplitude},
    Field{"tau_m", &SimParams::tau_m},
    Field{"sigmoid_k", &SimParams::sigmoid_k},
    Field{"sigmoid_x0", &SimParams::sigmoid_x0},
    Field{"natural_period", &SimParams::natural_period},
    Field{"neuron_delay", &SimParams::neuron_delay},
    Field{"mu_trigger_noise", &SimParams::mu_trigger_noise},
    Field{"trigger_noise_cv", &SimParams::trigger_noise_cv},
    Field{"sigma_env_noise", &SimParams::sigma_env_noise},
    Field{"env_noise_scale", &SimParams::env_noise_scale},
    Field{"stdp_A", &SimParams::stdp_A},
    Field{"stdp_tau", &SimParams::stdp_tau},
    Field{"stdp_window", &SimParams::stdp_window},
    Field{"window_attenuation", &SimParams::window_attenuation},
    Field{"pulse_intensity", &SimParams::pulse_intensity},
    Field{"drag_coeff", &SimParams::drag_coeff},
    Field{"mass", &SimParams::mass},
    Field{"eta", &SimParams::eta},
    Field{"dt", &SimParams::dt},
    Field{"connect_radius", &SimParams::connect_radius},
    Field{"spine_segment_spacing", &SimParams::spine_segment_spacing},
};

constexpr auto kNames = [] {
  std::array<std::string_view, kFields.size()> out{};
  for (std::size_t i = 0; i < kFields.size(); ++i) out[i] = kFields[i].name;
  return out;
}();

const Field* find(std::string_view key) {
  for (const auto& f : kFields)
    if (f.name == key) return &f;
  return nullptr;
}

}  // namespace

ValidationReport validate_params(const SimParams& p) {
  ValidationReport r;
  auto need = [&](bool ok, const char* field, const char* rule) {
    if (!ok) r.push_back({field, rule});
  };
  for (const auto& f : kFields)
    if (!std::isfinite(p.*f.member)) r.push_back({std::string(f.name), "finite"});
  need(p.u_rest < p.u_threshold, "u_rest", "u_rest < u_threshold");
  need(p.tau_m > 0, "tau_m", "tau_m > 0");
  need(p.stdp_tau > 0, "stdp_tau", "stdp_tau > 0");
  need(p.dt > 0, "dt", "dt > 0");
  need(p.drag_coeff >= 0, "drag_coeff", "drag_coeff >= 0");
  need(p.mass > 0, "mass", "mass > 0");
  need(p.window_attenuation > 0 && p.window_attenuation <= 1, "window_attenuation",
       "0 < window_attenuation <= 1");
  need(p.connect_radius > 0, "connect_radius", "connect_radius > 0");
  // not listed as model invariants, but a negative spread or window is meaningless
  need(p.trigger_noise_cv >= 0, "trigger_noise_cv", "trigger_noise_cv >= 0");
  need(p.sigma_env_noise >= 0, "sigma_env_noise", "sigma_env_noise >= 0");
  need(p.env_noise_scale >= 0, "env_noise_scale", "env_noise_scale >= 0");
  need(p.stdp_window >= 0, "stdp_window", "stdp_window >= 0");
  need(p.neuron_delay >= 0, "neuron_delay", "neuron_delay >= 0");
  need(p.spine_segment_spacing > 0, "spine_segment_spacing", "spine_segment_spacing > 0");
  return r;
}

void require_valid(const SimParams& p) {
  auto report = validate_params(p);
  if (report.empty()) return;
  std::string msg = "invalid parameters:";
  for (const auto& v : report) msg += " [" + v.field + ": " + v.rule + "]";
  throw ConfigError(msg);
}

double membrane_time_constant(double r_megaohm, double c_nanofarad) {
  if (!(r_megaohm > 0) || !(c_nanofarad > 0))
    throw DomainError("membrane_time_constant: R and C must be positive");
  return r_megaohm * c_nanofarad;
}

std::span<const std::string_view> param_names() { return kNames; }

bool has_param(std::string_view key) { return find(key) != nullptr; }

double get_param(const SimParams& p, std::string_view key) {
  const Field* f = find(key);
  if (!f) throw ConfigError("unknown parameter '" + std::string(key) + "'");
  return p.*f->member;
}

void set_param(SimParams& p, std::string_view key, double value) {
  const Field* f = find(key);
  if (!f) throw ConfigError("unknown parameter '" + std::string(key) + "'");
  p.*f->member = value;
}

void apply_override(SimParams& p, std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  auto key = assignment.substr(0, eq);
  auto text = assignment.substr(eq + 1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("override '" + std::string(assignment) + "': bad number");
  set_param(p, key, v);
}

SimParams params_from_json_text(std::string_view text, SimParams base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
  if (!j.is_object()) throw ConfigError("parameter file must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!has_param(it.key())) throw ConfigError("unknown parameter '" + it.key() + "'");
    if (!it->is_number()) throw ConfigError("parameter '" + it.key() + "' must be a number");
    set_param(base, it.key(), it->get<double>());
  }
  return base;
}

SimParams load_params_file(const std::filesystem::path& path, SimParams base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return params_from_json_text(ss.str(), base);
}

std::string params_to_json_text(const SimParams& p) {
  nlohmann::ordered_json j;
  for (const auto& f : kFields) j[std::string(f.name)] = p.*f.member;
  return j.dump(2);
}

}  // namespace spinegrow
