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
#include <map>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

#include "spinegrow/firing.hpp"
#include "spinegrow/growth.hpp"
#include "spinegrow/params.hpp"
#include "spinegrow/random.hpp"
#include "spinegrow/telemetry.hpp"
#include "spinegrow/vec2.hpp"

namespace spinegrow {

enum class EventKind {
  electric_pulse,
  synapse,
  excited_neuron,
  assign_group,
  firing_time,
  stop_growth,
  cone_init,
  cone_connected,
  cone_parent,
  cone_kinematics,
  force_excitation,
};

std::string_view to_string(EventKind k);

inline constexpr std::int64_t kBroadcast = -1;

struct Event {
  EventKind kind = EventKind::electric_pulse;
  std::int64_t due_tick = 0;
  std::int64_t emit_tick = 0;
  std::uint64_t seq = 0;
  std::int64_t source = 0;  // neuron id, or generator_key() for generators
  std::int64_t target = kBroadcast;
  Vec2 position;
  double intensity = 0.0;
  double time_ms = 0.0;
};

/// Generators share the id space of event sources with negative keys.
inline constexpr std::int64_t generator_key(std::size_t index) {
  return -2 - static_cast<std::int64_t>(index);
}

struct SomaConfig {
  NeuronId id = 0;
  Vec2 position;
  double poisson_lambda = 0.0;  ///< mean extra trigger delay, ms
  std::optional<int> max_cones;
  bool growth_enabled = true;
  /// Off: the neuron only fires by threshold crossing or when forced.
  bool stochastic = true;
};

struct SomaState {
  NeuronId id = 0;
  Vec2 position;
  MembraneState membrane;
  std::vector<double> spike_times;
  std::vector<AgentId> cones;
  std::vector<NeuronId> incoming_connections;
  bool growth_enabled = true;
  bool stochastic = true;
  double poisson_lambda = 0.0;
  std::optional<int> max_cones;
  // per-tick scratch
  double pulse_sum = 0.0;
  bool forced = false;
};

struct InputDrive {
  NeuronId neuron = 0;
  double phase_ms = 0.0;
  double period_ms = 1000.0;
  /// Poisson jitter added to every forced time; 0 = exact.
  double jitter_lambda_ms = 0.0;
  /// Keep forcing after the learning window closes.
  bool persist = false;
};

struct MasterPattern {
  std::vector<InputDrive> drives;
  std::vector<NeuronId> growth_inhibited;
  /// Forcing stops at this time unless a drive persists; 0 = never.
  double learning_duration_ms = 0.0;
};

struct PulseGenerator {
  Vec2 position;
  double period_ms = 1020.0;
  double intensity = 10.0;
  /// Time of the first pulse; negative means one period after start.
  double first_ms = -1.0;
};

struct SpineSegment {
  AgentId cone = 0;
  Vec2 position;
};

struct Connection {
  double time_ms = 0.0;
  NeuronId from = 0;  ///< owner of the connecting cone (receives the signal)
  NeuronId to = 0;    ///< soma that was reached (sends the signal)
  AgentId cone = 0;
};

struct WorldOptions {
  Vec2 map_size{800.0, 600.0};
  /// Kinematics records every N ticks per moving cone; 0 disables them.
  std::int64_t kinematics_every = 0;
  bool log_kinematics = false;
};

/// Discrete-time multi-agent core. One tick: master and generators emit,
/// due events are delivered in (due, seq) order, somas update in id order,
/// cones integrate in id order, then connections are checked.
class World {
 public:
  World(const SimParams& p, std::uint64_t seed, WorldOptions opt = {});

  NeuronId add_soma(const SomaConfig& cfg);
  void add_generator(const PulseGenerator& g);
  void set_master(MasterPattern m);
  /// Pre-wired edge: a cone of `from` already sitting on `to`.
  AgentId add_connected_cone(NeuronId from, NeuronId to);

  void tick();
  void run_ticks(std::int64_t n);
  void run_ms(double ms);

  std::int64_t current_tick() const { return tick_; }
  double now_ms() const { return static_cast<double>(tick_) * params_.dt; }
  const SimParams& params() const { return params_; }
  const WorldOptions& options() const { return opt_; }

  const std::vector<SomaState>& somas() const { return somas_; }
  const SomaState& soma(NeuronId id) const;
  SomaState& soma_mut(NeuronId id);
  const std::vector<ConeState>& cones() const { return cones_; }
  const ConeState& cone(AgentId id) const;
  bool cone_frozen(AgentId id) const;
  const std::vector<SpineSegment>& segments() const { return segments_; }
  const std::vector<Connection>& connections() const { return connections_; }
  const std::vector<PulseGenerator>& generators() const { return generators_; }
  const std::vector<Record>& records() const { return records_; }
  std::size_t pending_events() const { return queue_.size(); }
  std::uint64_t events_delivered() const { return delivered_; }

  /// Schedules an event; due_tick below the current tick is rejected.
  void post(Event e);

  /// Stable FNV-1a digest over agent state and counters.
  std::uint64_t state_hash() const;

 private:
  struct SeenPulse {
    double t = 0.0;
    Vec2 position;
    double intensity = 0.0;
  };
  struct ConeExtra {
    RandomStream rng;
    Vec2 pending_attraction;
    std::map<std::int64_t, SeenPulse> last_pulse;  // by source
    bool frozen = false;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.due_tick != b.due_tick ? a.due_tick > b.due_tick : a.seq > b.seq;
    }
  };

  void master_emit();
  void generators_emit();
  void deliver_due();
  void handle(const Event& e);
  void on_pulse(const Event& e);
  void on_own_spike(ConeState& c, ConeExtra& x, double t);
  void stdp_pull(ConeState& c, ConeExtra& x, double delta_t, Vec2 source_pos,
                 double intensity);
  void update_somas();
  void excite(SomaState& s);
  void update_cones();
  void check_connections();
  void maybe_spawn(SomaState& s);
  AgentId spawn_cone(SomaState& s);
  std::size_t soma_index(NeuronId id) const;
  void record(Record r);

  SimParams params_;
  WorldOptions opt_;
  std::uint64_t seed_;
  std::int64_t tick_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t delivered_ = 0;

  std::vector<SomaState> somas_;
  std::map<NeuronId, std::size_t> soma_index_;
  std::vector<RandomStream> soma_rng_;
  std::vector<ConeState> cones_;
  std::vector<ConeExtra> cone_extra_;
  std::vector<SpineSegment> segments_;
  std::vector<Connection> connections_;
  std::vector<PulseGenerator> generators_;
  std::vector<std::int64_t> generator_next_;
  MasterPattern master_;
  std::vector<std::int64_t> drive_next_;
  RandomStream master_rng_;
  bool started_ = false;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::vector<Record> records_;
};

}  // namespace spinegrow
