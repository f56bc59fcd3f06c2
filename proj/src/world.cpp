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

#include "spinegrow/world.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "spinegrow/errors.hpp"

namespace spinegrow {
namespace {

enum Stream : std::uint64_t { kSomaStream = 1, kConeStream = 2, kMasterStream = 3 };

std::int64_t to_ticks(double ms, double dt) { return std::llround(ms / dt); }

struct Fnv {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  void add(double d) { bytes(std::bit_cast<std::uint64_t>(d)); }
  void add(std::int64_t v) { bytes(static_cast<std::uint64_t>(v)); }
  void add(Vec2 v) {
    add(v.x);
    add(v.y);
  }
};

bool contains(const std::vector<NeuronId>& v, NeuronId id) {
  return std::find(v.begin(), v.end(), id) != v.end();
}

}  // namespace

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::electric_pulse: return "electric_pulse";
    case EventKind::synapse: return "synapse";
    case EventKind::excited_neuron: return "excited_neuron";
    case EventKind::assign_group: return "assign_group";
    case EventKind::firing_time: return "firing_time";
    case EventKind::stop_growth: return "stop_growth";
    case EventKind::cone_init: return "cone_init";
    case EventKind::cone_connected: return "cone_connected";
    case EventKind::cone_parent: return "cone_parent";
    case EventKind::cone_kinematics: return "cone_kinematics";
    case EventKind::force_excitation: return "force_excitation";
  }
  return "unknown";
}

World::World(const SimParams& p, std::uint64_t seed, WorldOptions opt)
    : params_(p),
      opt_(opt),
      seed_(seed),
      master_rng_(RandomStream::derive(seed, kMasterStream)) {
  require_valid(params_);
  if (!(opt_.map_size.x > 0 && opt_.map_size.y > 0))
    throw ConfigError("map size must be positive");
}

NeuronId World::add_soma(const SomaConfig& cfg) {
  if (started_) throw ConfigError("somas must be added before the first tick");
  if (soma_index_.count(cfg.id)) throw ConfigError("duplicate soma id " + std::to_string(cfg.id));
  if (cfg.id < 0) throw ConfigError("soma ids must be non-negative");
  SomaState s;
  s.id = cfg.id;
  s.position = cfg.position;
  s.membrane.u = params_.u_rest;
  s.growth_enabled = cfg.growth_enabled;
  s.stochastic = cfg.stochastic;
  s.poisson_lambda = cfg.poisson_lambda;
  s.max_cones = cfg.max_cones;
  auto it = std::upper_bound(somas_.begin(), somas_.end(), cfg.id,
                             [](NeuronId id, const SomaState& o) { return id < o.id; });
  auto pos = static_cast<std::size_t>(it - somas_.begin());
  somas_.insert(it, s);
  soma_rng_.insert(soma_rng_.begin() + static_cast<std::ptrdiff_t>(pos),
                   RandomStream(RandomStream::derive(seed_, kSomaStream,
                                                     static_cast<std::uint64_t>(cfg.id))));
  soma_index_.clear();
  for (std::size_t i = 0; i < somas_.size(); ++i) soma_index_[somas_[i].id] = i;
  return cfg.id;
}

void World::add_generator(const PulseGenerator& g) {
  if (!(g.period_ms > 0)) throw ConfigError("generator period must be positive");
  generators_.push_back(g);
  const double first = g.first_ms < 0 ? g.period_ms : g.first_ms;
  generator_next_.push_back(std::max(tick_, to_ticks(first, params_.dt)));
}

void World::set_master(MasterPattern m) {
  for (const auto& d : m.drives) {
    soma_index(d.neuron);
    if (!(d.period_ms > 0)) throw ConfigError("input period must be positive");
  }
  for (NeuronId id : m.growth_inhibited) soma_index(id);
  master_ = std::move(m);
  drive_next_.clear();
  for (const auto& d : master_.drives)
    drive_next_.push_back(tick_ + std::max<std::int64_t>(0, to_ticks(d.phase_ms, params_.dt)));
}

AgentId World::add_connected_cone(NeuronId from, NeuronId to) {
  SomaState& s = somas_[soma_index(from)];
  const SomaState& target = somas_[soma_index(to)];
  if (from == to) throw ConfigError("a neuron cannot connect to itself");
  if (contains(s.incoming_connections, to))
    throw ConfigError("duplicate connection " + std::to_string(from) + "->" + std::to_string(to));
  const AgentId id = spawn_cone(s);
  ConeState& c = cones_[static_cast<std::size_t>(id)];
  c.position = target.position;
  c.connected_to = to;
  s.incoming_connections.push_back(to);
  connections_.push_back({now_ms(), from, to, id});
  Record r;
  r.time_ms = now_ms();
  r.kind = RecordKind::connection;
  r.neuron_id = from;
  r.agent_id = id;
  r.x = c.position.x;
  r.y = c.position.y;
  r.target_id = to;
  record(r);
  return id;
}

std::size_t World::soma_index(NeuronId id) const {
  auto it = soma_index_.find(id);
  if (it == soma_index_.end()) throw LookupError("no soma with id " + std::to_string(id));
  return it->second;
}

const SomaState& World::soma(NeuronId id) const { return somas_[soma_index(id)]; }
SomaState& World::soma_mut(NeuronId id) { return somas_[soma_index(id)]; }

const ConeState& World::cone(AgentId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= cones_.size())
    throw LookupError("no cone with id " + std::to_string(id));
  return cones_[static_cast<std::size_t>(id)];
}

bool World::cone_frozen(AgentId id) const {
  cone(id);
  return cone_extra_[static_cast<std::size_t>(id)].frozen;
}

void World::post(Event e) {
  if (e.due_tick < tick_) throw Error("event scheduled in the past");
  e.emit_tick = tick_;
  e.seq = seq_++;
  queue_.push(e);
}

void World::record(Record r) { records_.push_back(std::move(r)); }

void World::run_ticks(std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) tick();
}

void World::run_ms(double ms) { run_ticks(to_ticks(ms, params_.dt)); }

void World::tick() {
  const bool first = !started_;
  if (first) {
    started_ = true;
    for (NeuronId id : master_.growth_inhibited) {
      Event e;
      e.kind = EventKind::stop_growth;
      e.due_tick = tick_;
      e.source = kBroadcast;
      e.target = id;
      post(e);
    }
  }
  master_emit();
  generators_emit();
  deliver_due();
  update_somas();
  if (first)
    for (auto& s : somas_) maybe_spawn(s);
  update_cones();
  check_connections();
  deliver_due();
  ++tick_;
}

void World::master_emit() {
  const std::int64_t learn = to_ticks(master_.learning_duration_ms, params_.dt);
  for (std::size_t i = 0; i < master_.drives.size(); ++i) {
    const InputDrive& d = master_.drives[i];
    const std::int64_t period = std::max<std::int64_t>(1, to_ticks(d.period_ms, params_.dt));
    while (drive_next_[i] <= tick_) {
      const std::int64_t base = drive_next_[i];
      if (learn > 0 && base >= learn && !d.persist) {
        drive_next_[i] = std::numeric_limits<std::int64_t>::max();
        break;
      }
      drive_next_[i] += period;
      Event e;
      e.kind = EventKind::force_excitation;
      e.due_tick = base + static_cast<std::int64_t>(master_rng_.poisson(d.jitter_lambda_ms / params_.dt));
      e.source = kBroadcast;
      e.target = d.neuron;
      e.time_ms = static_cast<double>(e.due_tick) * params_.dt;
      post(e);
    }
  }
}

void World::generators_emit() {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const PulseGenerator& g = generators_[i];
    if (generator_next_[i] != tick_) continue;
    generator_next_[i] += std::max<std::int64_t>(1, to_ticks(g.period_ms, params_.dt));
    Event e;
    e.kind = EventKind::electric_pulse;
    e.due_tick = tick_;
    e.source = generator_key(i);
    e.position = g.position;
    e.intensity = g.intensity;
    e.time_ms = now_ms();
    post(e);
  }
}

void World::deliver_due() {
  while (!queue_.empty() && queue_.top().due_tick <= tick_) {
    const Event e = queue_.top();
    queue_.pop();
    ++delivered_;
    handle(e);
  }
}

void World::handle(const Event& e) {
  switch (e.kind) {
    case EventKind::force_excitation: {
      SomaState& s = somas_[soma_index(e.target)];
      s.forced = true;
      Record r;
      r.time_ms = now_ms();
      r.kind = RecordKind::forced_input;
      r.neuron_id = s.id;
      record(r);
      break;
    }
    case EventKind::electric_pulse:
      on_pulse(e);
      break;
    case EventKind::synapse:
      somas_[soma_index(e.target)].pulse_sum += params_.pulse_amplitude;
      break;
    case EventKind::stop_growth: {
      SomaState& s = somas_[soma_index(e.target)];
      s.growth_enabled = false;
      for (AgentId id : s.cones)
        if (!cones_[static_cast<std::size_t>(id)].connected_to)
          cone_extra_[static_cast<std::size_t>(id)].frozen = true;
      break;
    }
    case EventKind::cone_connected:
      maybe_spawn(somas_[soma_index(e.target)]);
      break;
    default:
      break;
  }
}

void World::on_pulse(const Event& e) {
  const double t = e.time_ms;
  if (e.source >= 0) {
    const SomaState& src = somas_[soma_index(e.source)];
    Record r;
    r.time_ms = now_ms();
    r.kind = RecordKind::pulse;
    r.neuron_id = src.id;
    r.x = e.position.x;
    r.y = e.position.y;
    r.value = e.intensity;
    record(r);
    // excited_neuron to the emitter's own cones
    for (AgentId id : src.cones) {
      auto i = static_cast<std::size_t>(id);
      if (!cones_[i].connected_to) on_own_spike(cones_[i], cone_extra_[i], t);
    }
  }
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    ConeState& c = cones_[i];
    if (c.parent_neuron == e.source) continue;
    if (c.connected_to) {
      if (*c.connected_to == e.source) {
        Event syn;
        syn.kind = EventKind::synapse;
        syn.due_tick = tick_;
        syn.source = static_cast<std::int64_t>(c.id);
        syn.target = c.parent_neuron;
        syn.time_ms = t;
        post(syn);
      }
      continue;
    }
    ConeExtra& x = cone_extra_[i];
    if (x.frozen) continue;
    const SomaState& parent = somas_[soma_index(c.parent_neuron)];
    if (e.source >= 0 && contains(parent.incoming_connections, e.source)) continue;
    x.last_pulse[e.source] = {t, e.position, e.intensity};
    if (c.last_own_spike)
      stdp_pull(c, x, *c.last_own_spike - t, e.position, e.intensity);
  }
}

void World::on_own_spike(ConeState& c, ConeExtra& x, double t) {
  const std::optional<double> prev = c.last_own_spike;
  c.last_own_spike = t;
  if (x.frozen) return;
  const SomaState& parent = somas_[soma_index(c.parent_neuron)];
  for (const auto& [src, seen] : x.last_pulse) {
    if (src >= 0 && contains(parent.incoming_connections, src)) continue;
    // pulses at or before the previous own spike were paired back then
    if (prev && seen.t <= *prev) continue;
    stdp_pull(c, x, t - seen.t, seen.position, seen.intensity);
  }
}

void World::stdp_pull(ConeState& c, ConeExtra& x, double delta_t, Vec2 source_pos,
                      double intensity) {
  const double value = stdp_kernel(delta_t, params_.stdp_A, params_.stdp_tau) *
                       window_attenuation(delta_t, params_) * intensity;
  if (value <= 0.0) return;
  if (distance(c.position, source_pos) == 0.0) return;  // the connection check takes over
  x.pending_attraction += attraction_force(value, c.position, source_pos, params_.eta);
}

void World::update_somas() {
  for (std::size_t i = 0; i < somas_.size(); ++i) {
    SomaState& s = somas_[i];
    RandomStream& rng = soma_rng_[i];
    const double u = membrane_step(s.membrane.u, s.pulse_sum, params_.mu_trigger_noise, rng, params_);
    if (!std::isfinite(u)) {
      std::ostringstream os;
      os << "tick " << tick_ << ": membrane of neuron " << s.id << " is not finite";
      throw NumericError(os.str());
    }
    s.pulse_sum = 0.0;
    s.membrane.u = u;
    s.membrane.last_update = tick_;
    bool fire = s.forced;
    if (!fire) fire = s.stochastic ? spike_decision(u, params_, rng) : u >= params_.u_threshold;
    s.forced = false;
    s.membrane.fired_this_tick = fire;
    if (fire) excite(s);
  }
}

void World::excite(SomaState& s) {
  RandomStream& rng = soma_rng_[soma_index(s.id)];
  const double t = now_ms();
  Record r;
  r.time_ms = t;
  r.kind = RecordKind::spike;
  r.neuron_id = s.id;
  r.x = s.position.x;
  r.y = s.position.y;
  r.value = s.membrane.u;
  record(r);
  s.spike_times.push_back(t);
  s.membrane.u = params_.u_rest;
  const double delay = params_.neuron_delay + static_cast<double>(rng.poisson(s.poisson_lambda));
  Event e;
  e.kind = EventKind::electric_pulse;
  e.due_tick = tick_ + to_ticks(delay, params_.dt);
  e.source = s.id;
  e.position = s.position;
  e.intensity = params_.pulse_intensity;
  e.time_ms = static_cast<double>(e.due_tick) * params_.dt;
  post(e);
}

void World::update_cones() {
  const double sigma = params_.sigma_env_noise * params_.env_noise_scale;
  const bool log_kin = opt_.kinematics_every > 0 && tick_ % opt_.kinematics_every == 0;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    ConeState& c = cones_[i];
    ConeExtra& x = cone_extra_[i];
    if (c.connected_to || x.frozen) continue;
    const Vec2 external = sample_env_noise(sigma, x.rng) + x.pending_attraction;
    x.pending_attraction = {};
    ConeState next;
    try {
      next = advance_cone(c, external, params_);
    } catch (const NumericError& err) {
      std::ostringstream os;
      os << "tick " << tick_ << ": " << err.what();
      throw NumericError(os.str());
    }
    // the map edge stops motion along the violated axis
    if (next.position.x < 0 || next.position.x > opt_.map_size.x) {
      next.position.x = std::clamp(next.position.x, 0.0, opt_.map_size.x);
      next.velocity.x = 0.0;
    }
    if (next.position.y < 0 || next.position.y > opt_.map_size.y) {
      next.position.y = std::clamp(next.position.y, 0.0, opt_.map_size.y);
      next.velocity.y = 0.0;
    }
    while (next.distance_since_segment >= params_.spine_segment_spacing) {
      segments_.push_back({c.id, next.position});
      next.distance_since_segment -= params_.spine_segment_spacing;
    }
    c = next;
    if (log_kin) {
      Record r;
      r.time_ms = now_ms();
      r.kind = RecordKind::kinematics;
      r.neuron_id = c.parent_neuron;
      r.agent_id = c.id;
      r.x = c.position.x;
      r.y = c.position.y;
      r.vx = c.velocity.x;
      r.vy = c.velocity.y;
      r.ax = c.acceleration.x;
      r.ay = c.acceleration.y;
      record(r);
    }
  }
}

void World::check_connections() {
  const double r2 = params_.connect_radius * params_.connect_radius;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    ConeState& c = cones_[i];
    if (c.connected_to || cone_extra_[i].frozen) continue;
    SomaState& parent = somas_[soma_index(c.parent_neuron)];
    const SomaState* best = nullptr;
    double best_d2 = r2;
    for (const SomaState& s : somas_) {
      if (s.id == parent.id || contains(parent.incoming_connections, s.id)) continue;
      const double d2 = (s.position - c.position).norm2();
      if (d2 <= best_d2 && (!best || d2 < best_d2)) {
        best = &s;
        best_d2 = d2;
      }
    }
    if (!best) continue;
    c.connected_to = best->id;
    c.velocity = {};
    c.acceleration = {};
    parent.incoming_connections.push_back(best->id);
    connections_.push_back({now_ms(), parent.id, best->id, c.id});
    Record r;
    r.time_ms = now_ms();
    r.kind = RecordKind::connection;
    r.neuron_id = parent.id;
    r.agent_id = c.id;
    r.x = c.position.x;
    r.y = c.position.y;
    r.target_id = best->id;
    record(r);
    Event done;
    done.kind = EventKind::cone_connected;
    done.due_tick = tick_;
    done.source = c.id;
    done.target = parent.id;
    post(done);
    Event informed = done;
    informed.kind = EventKind::cone_parent;
    informed.target = best->id;
    post(informed);
  }
}

void World::maybe_spawn(SomaState& s) {
  if (!s.growth_enabled) return;
  if (s.max_cones && static_cast<int>(s.cones.size()) >= *s.max_cones) return;
  for (AgentId id : s.cones)
    if (!cones_[static_cast<std::size_t>(id)].connected_to) return;
  spawn_cone(s);
}

AgentId World::spawn_cone(SomaState& s) {
  ConeState c;
  c.id = static_cast<AgentId>(cones_.size());
  c.parent_neuron = s.id;
  c.position = s.position;
  cones_.push_back(c);
  cone_extra_.push_back(
      ConeExtra{RandomStream(RandomStream::derive(seed_, kConeStream,
                                                  static_cast<std::uint64_t>(c.id))),
                {}, {}, false});
  s.cones.push_back(c.id);
  Event e;
  e.kind = EventKind::cone_init;
  e.due_tick = tick_;
  e.source = s.id;
  e.target = c.id;
  post(e);
  return c.id;
}

std::uint64_t World::state_hash() const {
  Fnv f;
  f.add(tick_);
  f.add(static_cast<std::int64_t>(delivered_));
  for (const SomaState& s : somas_) {
    f.add(s.id);
    f.add(s.membrane.u);
    f.add(static_cast<std::int64_t>(s.spike_times.size()));
    if (!s.spike_times.empty()) f.add(s.spike_times.back());
    for (NeuronId n : s.incoming_connections) f.add(n);
  }
  for (const ConeState& c : cones_) {
    f.add(c.id);
    f.add(c.position);
    f.add(c.velocity);
    f.add(c.acceleration);
    f.add(c.connected_to ? *c.connected_to : std::int64_t{-1});
  }
  f.add(static_cast<std::int64_t>(segments_.size()));
  f.add(static_cast<std::int64_t>(records_.size()));
  return f.h;
}

}  // namespace spinegrow
