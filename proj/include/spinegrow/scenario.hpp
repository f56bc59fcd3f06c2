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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinegrow/params.hpp"
#include "spinegrow/telemetry.hpp"
#include "spinegrow/world.hpp"

namespace spinegrow {

/// Randomly placed somas appended after the fixed layout.
struct ReservoirSpec {
  int count = 0;
  double min_separation = 40.0;
  Vec2 lo;
  Vec2 hi;
  bool stochastic = true;
  double poisson_lambda = 0.0;
  int retry_budget = 100000;
};

struct ScenarioSpec {
  std::string name;
  Vec2 map_size{800.0, 600.0};
  std::vector<SomaConfig> somas;
  std::vector<InputDrive> inputs;
  /// Forcing window in seconds; 0 = the whole run.
  double learning_duration_s = 0.0;
  std::vector<NeuronId> growth_inhibited;
  IntendedTopology intended;
  std::vector<PulseGenerator> generators;
  ReservoirSpec reservoir;
  /// Pre-connected random edges among reservoir somas.
  int initial_random_edges = 0;
  /// Run length used when the caller does not give one.
  double default_duration_s = 100.0;
  /// Parameter values this scenario runs with unless overridden again.
  std::vector<std::pair<std::string, double>> params;
};

std::span<const std::string_view> scenario_names();
/// Throws LookupError for an unknown name.
ScenarioSpec builtin_scenario(std::string_view name);

/// Throws ConfigError naming the first broken invariant.
void validate_scenario(const ScenarioSpec& spec);

/// JSON mirror of ScenarioSpec; unknown keys are rejected.
ScenarioSpec scenario_from_json_text(std::string_view text);
ScenarioSpec load_scenario_file(const std::filesystem::path& path);
std::string scenario_to_json_text(const ScenarioSpec& spec);

bool has_scenario_key(std::string_view key);
/// Scalar scenario knobs reachable from "key=value" overrides.
void set_scenario_key(ScenarioSpec& spec, std::string_view key, double value);

/// `base` with the scenario's own parameter values applied.
SimParams scenario_params(const ScenarioSpec& spec, SimParams base = {});

/// Fixed somas plus the seeded reservoir placement, in id order.
/// Throws ConfigError when the reservoir cannot be packed.
std::vector<SomaConfig> resolve_layout(const ScenarioSpec& spec, std::uint64_t seed);

World build_scenario(const ScenarioSpec& spec, const SimParams& p, std::uint64_t seed,
                     WorldOptions opt = {});

/// Intended edges, or the input-output reachability predicate.
IntendedTopology intended_topology(const ScenarioSpec& spec);

std::vector<Edge> realized_edges(const World& w);

struct RunSummary {
  std::string scenario;
  std::uint64_t seed = 0;
  double duration_s = 0.0;
  double success_rate = 0.0;
  /// First time the intended topology was complete; negative if never.
  double time_to_full_ms = -1.0;
  std::vector<std::pair<std::int64_t, std::size_t>> spikes;
  std::vector<Edge> edges;
  std::uint64_t state_hash = 0;
};

RunSummary summarize(const World& w, const ScenarioSpec& spec, std::uint64_t seed);
void write_summary_csv(const std::filesystem::path& path, const RunSummary& s);

}  // namespace spinegrow
