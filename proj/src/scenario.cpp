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

#include "spinegrow/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spinegrow/errors.hpp"

namespace spinegrow {
namespace {

using nlohmann::json;

enum Stream : std::uint64_t { kLayoutStream = 4, kEdgeStream = 5 };

constexpr std::array<std::string_view, 6> kNames{
    "neuron_pair",          "delay_line_linear",
    "delay_line_circular",  "coincidence_detector",
    "extended_coincidence_detector", "reservoir"};

const Vec2 kMapCentre{400.0, 300.0};
const PulseGenerator kStranger{{750.0, 550.0}, 1020.0, 10.0, -1.0};

SomaConfig soma(NeuronId id, double x, double y, std::optional<int> max_cones, bool stochastic) {
  SomaConfig s;
  s.id = id;
  s.position = {x, y};
  s.max_cones = max_cones;
  s.stochastic = stochastic;
  return s;
}

ScenarioSpec neuron_pair() {
  ScenarioSpec s;
  s.name = "neuron_pair";
  s.somas = {soma(0, 350, 300, 1, false), soma(1, 450, 300, 1, false)};
  s.inputs = {{0, 0.0, 1000.0, 0.0, false}, {1, 20.0, 1000.0, 0.0, false}};
  s.intended.edges = {{1, 0}};
  s.default_duration_s = 600.0;
  return s;
}

ScenarioSpec delay_line(bool circular) {
  ScenarioSpec s;
  s.name = circular ? "delay_line_circular" : "delay_line_linear";
  constexpr int n = 8;
  for (int i = 0; i < n; ++i) {
    Vec2 p;
    if (circular) {
      // counter-clockwise from the left, so the chain end sits next to its start
      const double th = std::numbers::pi + 2.0 * std::numbers::pi * i / n;
      p = kMapCentre + Vec2{200.0 * std::cos(th), -200.0 * std::sin(th)};
    } else {
      p = {50.0 + 100.0 * i, kMapCentre.y};
    }
    s.somas.push_back(soma(i, p.x, p.y, 1, false));
    s.inputs.push_back({i, 20.0 * i, 1000.0, 0.0, false});
    if (i > 0) s.intended.edges.push_back({i, i - 1});
  }
  s.generators = {kStranger};
  s.default_duration_s = 1000.0;
  return s;
}

ScenarioSpec coincidence_detector() {
  ScenarioSpec s;
  s.name = "coincidence_detector";
  s.somas = {soma(0, 300, 230, 1, false), soma(1, 300, 370, 1, false),
             soma(2, 440, 300, 2, false)};
  s.inputs = {{0, 0.0, 200.0, 0.0, false}, {1, 0.0, 200.0, 0.0, false},
              {2, 20.0, 200.0, 0.0, false}};
  s.growth_inhibited = {0, 1};
  s.intended.edges = {{2, 0}, {2, 1}};
  s.generators = {kStranger};
  s.default_duration_s = 1000.0;
  return s;
}

ScenarioSpec extended_coincidence_detector() {
  ScenarioSpec s;
  s.name = "extended_coincidence_detector";
  // N1, N2 inputs on the left; N3 delays N2; N_O is the output
  s.somas = {soma(0, 320, 240, 1, true), soma(1, 320, 360, 1, true),
             soma(2, 400, 370, 1, true), soma(3, 400, 300, 2, true)};
  s.inputs = {{0, 20.0, 200.0, 0.0, true}, {1, 0.0, 200.0, 0.0, true},
              {2, 0.0, 200.0, 0.0, false}, {3, 40.0, 200.0, 0.0, false}};
  s.growth_inhibited = {0, 1};
  s.learning_duration_s = 500.0;
  s.intended.edges = {{3, 0}, {3, 2}, {2, 1}};
  s.default_duration_s = 2500.0;
  s.params = {{"pulse_amplitude", 6.0}};
  return s;
}

ScenarioSpec reservoir() {
  ScenarioSpec s;
  s.name = "reservoir";
  s.somas = {soma(0, 300, 240, std::nullopt, true), soma(1, 300, 300, std::nullopt, true),
             soma(2, 300, 360, std::nullopt, true), soma(3, 380, 300, std::nullopt, true)};
  for (NeuronId i = 0; i < 3; ++i) s.inputs.push_back({i, 0.0, 200.0, 0.0, true});
  s.inputs.push_back({3, 20.0, 200.0, 0.0, false});
  s.growth_inhibited = {0, 1, 2};
  s.learning_duration_s = 400.0;
  s.reservoir.count = 17;
  s.reservoir.min_separation = 40.0;
  s.reservoir.lo = {200.0, 100.0};
  s.reservoir.hi = {600.0, 500.0};
  s.intended.reachability = true;
  s.intended.inputs = {0, 1, 2};
  s.intended.output = 3;
  s.generators = {kStranger};
  s.default_duration_s = 800.0;  // learning plus an equal free-running stretch
  return s;
}

Vec2 vec_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string(what) + " must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void only_keys(const json& j, std::initializer_list<std::string_view> allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

}  // namespace

std::span<const std::string_view> scenario_names() { return kNames; }

ScenarioSpec builtin_scenario(std::string_view name) {
  if (name == "neuron_pair") return neuron_pair();
  if (name == "delay_line_linear") return delay_line(false);
  if (name == "delay_line_circular") return delay_line(true);
  if (name == "coincidence_detector") return coincidence_detector();
  if (name == "extended_coincidence_detector") return extended_coincidence_detector();
  if (name == "reservoir") return reservoir();
  throw LookupError("unknown scenario '" + std::string(name) + "'");
}

void validate_scenario(const ScenarioSpec& spec) {
  if (!(spec.map_size.x > 0 && spec.map_size.y > 0)) throw ConfigError("map size must be positive");
  std::set<NeuronId> ids;
  auto inside = [&](Vec2 p) {
    return p.x >= 0 && p.y >= 0 && p.x <= spec.map_size.x && p.y <= spec.map_size.y;
  };
  for (const auto& s : spec.somas) {
    if (!ids.insert(s.id).second) throw ConfigError("duplicate soma id " + std::to_string(s.id));
    if (s.id < 0) throw ConfigError("soma ids must be non-negative");
    if (!inside(s.position)) throw ConfigError("soma " + std::to_string(s.id) + " lies outside the map");
    if (s.max_cones && *s.max_cones < 0) throw ConfigError("max_cones must be >= 0");
  }
  if (spec.reservoir.count < 0) throw ConfigError("reservoir count must be >= 0");
  if (spec.reservoir.count > 0) {
    if (!(inside(spec.reservoir.lo) && inside(spec.reservoir.hi)) ||
        spec.reservoir.lo.x > spec.reservoir.hi.x || spec.reservoir.lo.y > spec.reservoir.hi.y)
      throw ConfigError("reservoir region must be a box inside the map");
  }
  NeuronId next = ids.empty() ? 0 : *ids.rbegin() + 1;
  for (int i = 0; i < spec.reservoir.count; ++i) ids.insert(next++);
  auto known = [&](NeuronId id, const char* what) {
    if (!ids.count(id)) throw ConfigError(std::string(what) + " references unknown neuron " + std::to_string(id));
  };
  for (const auto& d : spec.inputs) {
    known(d.neuron, "input");
    if (!(d.period_ms > 0)) throw ConfigError("input period must be positive");
    if (d.phase_ms < 0 || d.jitter_lambda_ms < 0) throw ConfigError("input phase and jitter must be >= 0");
  }
  for (auto id : spec.growth_inhibited) known(id, "growth_inhibited");
  for (const auto& e : spec.intended.edges) {
    known(e.from, "intended edge");
    known(e.to, "intended edge");
  }
  if (spec.intended.reachability) {
    for (auto id : spec.intended.inputs) known(id, "reachability input");
    known(spec.intended.output, "reachability output");
  }
  for (const auto& g : spec.generators) {
    if (!(g.period_ms > 0)) throw ConfigError("generator period must be positive");
    if (!inside(g.position)) throw ConfigError("generator lies outside the map");
  }
  if (spec.learning_duration_s < 0) throw ConfigError("learning_duration_s must be >= 0");
  if (spec.initial_random_edges < 0) throw ConfigError("initial_random_edges must be >= 0");
  SimParams p;
  for (const auto& [k, v] : spec.params) set_param(p, k, v);
}

ScenarioSpec scenario_from_json_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
  ScenarioSpec s;
  try {
    only_keys(j,
              {"name", "base", "map_size", "somas", "inputs", "learning_duration_s",
               "growth_inhibited", "intended_edges", "reachability", "generators", "reservoir",
               "initial_random_edges", "default_duration_s", "params"},
              "scenario");
    // "base" starts from a built-in scenario; other keys replace its fields
    s = j.contains("base") ? builtin_scenario(j["base"].get<std::string>()) : ScenarioSpec{};
    s.name = get_or<std::string>(j, "name", s.name.empty() ? "custom" : s.name);
    if (j.contains("map_size")) s.map_size = vec_from(j["map_size"], "map_size");
    if (j.contains("somas")) {
      s.somas.clear();
      for (const auto& e : j["somas"]) {
        only_keys(e, {"id", "x", "y", "poisson_lambda", "max_cones", "growth_enabled", "stochastic"},
                  "soma");
        SomaConfig c;
        c.id = get_or<NeuronId>(e, "id", static_cast<NeuronId>(s.somas.size()));
        c.position = {get_or<double>(e, "x", 0.0), get_or<double>(e, "y", 0.0)};
        c.poisson_lambda = get_or<double>(e, "poisson_lambda", 0.0);
        if (e.contains("max_cones") && !e["max_cones"].is_null()) c.max_cones = e["max_cones"].get<int>();
        c.growth_enabled = get_or<bool>(e, "growth_enabled", true);
        c.stochastic = get_or<bool>(e, "stochastic", true);
        s.somas.push_back(c);
      }
    }
    if (j.contains("inputs")) {
      s.inputs.clear();
      for (const auto& e : j["inputs"]) {
        only_keys(e, {"neuron", "phase_ms", "period_ms", "jitter_lambda_ms", "persist"}, "input");
        InputDrive d;
        d.neuron = get_or<NeuronId>(e, "neuron", 0);
        d.phase_ms = get_or<double>(e, "phase_ms", 0.0);
        d.period_ms = get_or<double>(e, "period_ms", 1000.0);
        d.jitter_lambda_ms = get_or<double>(e, "jitter_lambda_ms", 0.0);
        d.persist = get_or<bool>(e, "persist", false);
        s.inputs.push_back(d);
      }
    }
    s.learning_duration_s = get_or<double>(j, "learning_duration_s", s.learning_duration_s);
    if (j.contains("growth_inhibited")) s.growth_inhibited = j["growth_inhibited"].get<std::vector<NeuronId>>();
    if (j.contains("intended_edges")) {
      s.intended.edges.clear();
      for (const auto& e : j["intended_edges"]) {
        if (!e.is_array() || e.size() != 2) throw ConfigError("intended edge must be [from, to]");
        s.intended.edges.push_back({e[0].get<std::int64_t>(), e[1].get<std::int64_t>()});
      }
    }
    if (j.contains("reachability")) {
      const auto& r = j["reachability"];
      if (r.is_null()) {
        s.intended.reachability = false;
      } else {
        only_keys(r, {"inputs", "output"}, "reachability");
        s.intended.reachability = true;
        s.intended.inputs = r.at("inputs").get<std::vector<std::int64_t>>();
        s.intended.output = r.at("output").get<std::int64_t>();
      }
    }
    if (j.contains("generators")) {
      s.generators.clear();
      for (const auto& e : j["generators"]) {
        only_keys(e, {"x", "y", "period_ms", "intensity", "first_ms"}, "generator");
        PulseGenerator g;
        g.position = {get_or<double>(e, "x", 0.0), get_or<double>(e, "y", 0.0)};
        g.period_ms = get_or<double>(e, "period_ms", g.period_ms);
        g.intensity = get_or<double>(e, "intensity", g.intensity);
        g.first_ms = get_or<double>(e, "first_ms", g.first_ms);
        s.generators.push_back(g);
      }
    }
    if (j.contains("reservoir")) {
      const auto& r = j["reservoir"];
      only_keys(r, {"count", "min_separation", "lo", "hi", "stochastic", "poisson_lambda", "retry_budget"},
                "reservoir");
      s.reservoir.count = get_or<int>(r, "count", s.reservoir.count);
      s.reservoir.min_separation = get_or<double>(r, "min_separation", s.reservoir.min_separation);
      if (r.contains("lo")) s.reservoir.lo = vec_from(r["lo"], "reservoir.lo");
      if (r.contains("hi")) s.reservoir.hi = vec_from(r["hi"], "reservoir.hi");
      s.reservoir.stochastic = get_or<bool>(r, "stochastic", s.reservoir.stochastic);
      s.reservoir.poisson_lambda = get_or<double>(r, "poisson_lambda", s.reservoir.poisson_lambda);
      s.reservoir.retry_budget = get_or<int>(r, "retry_budget", s.reservoir.retry_budget);
    }
    s.initial_random_edges = get_or<int>(j, "initial_random_edges", s.initial_random_edges);
    s.default_duration_s = get_or<double>(j, "default_duration_s", s.default_duration_s);
    if (j.contains("params")) {
      const auto& pj = j["params"];
      if (!pj.is_object()) throw ConfigError("params must be an object");
      s.params.clear();
      for (auto it = pj.begin(); it != pj.end(); ++it) {
        if (!has_param(it.key())) throw ConfigError("unknown parameter '" + it.key() + "'");
        if (!it->is_number()) throw ConfigError("parameter '" + it.key() + "' must be a number");
        s.params.emplace_back(it.key(), it->get<double>());
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad scenario value: ") + e.what());
  }
  validate_scenario(s);
  return s;
}

ScenarioSpec load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json_text(ss.str());
}

std::string scenario_to_json_text(const ScenarioSpec& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["map_size"] = {s.map_size.x, s.map_size.y};
  j["somas"] = nlohmann::ordered_json::array();
  for (const auto& c : s.somas) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["x"] = c.position.x;
    e["y"] = c.position.y;
    e["poisson_lambda"] = c.poisson_lambda;
    e["max_cones"] = c.max_cones ? nlohmann::ordered_json(*c.max_cones) : nlohmann::ordered_json();
    e["growth_enabled"] = c.growth_enabled;
    e["stochastic"] = c.stochastic;
    j["somas"].push_back(e);
  }
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& d : s.inputs)
    j["inputs"].push_back({{"neuron", d.neuron},
                           {"phase_ms", d.phase_ms},
                           {"period_ms", d.period_ms},
                           {"jitter_lambda_ms", d.jitter_lambda_ms},
                           {"persist", d.persist}});
  j["learning_duration_s"] = s.learning_duration_s;
  j["growth_inhibited"] = s.growth_inhibited;
  j["intended_edges"] = nlohmann::ordered_json::array();
  for (const auto& e : s.intended.edges) j["intended_edges"].push_back({e.from, e.to});
  if (s.intended.reachability)
    j["reachability"] = {{"inputs", s.intended.inputs}, {"output", s.intended.output}};
  j["generators"] = nlohmann::ordered_json::array();
  for (const auto& g : s.generators)
    j["generators"].push_back({{"x", g.position.x},
                               {"y", g.position.y},
                               {"period_ms", g.period_ms},
                               {"intensity", g.intensity},
                               {"first_ms", g.first_ms}});
  j["reservoir"] = {{"count", s.reservoir.count},
                    {"min_separation", s.reservoir.min_separation},
                    {"lo", {s.reservoir.lo.x, s.reservoir.lo.y}},
                    {"hi", {s.reservoir.hi.x, s.reservoir.hi.y}},
                    {"stochastic", s.reservoir.stochastic},
                    {"poisson_lambda", s.reservoir.poisson_lambda},
                    {"retry_budget", s.reservoir.retry_budget}};
  j["initial_random_edges"] = s.initial_random_edges;
  j["default_duration_s"] = s.default_duration_s;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.params) j["params"][k] = v;
  return j.dump(2);
}

namespace {

struct ScenarioKey {
  std::string_view name;
  void (*apply)(ScenarioSpec&, double);
};

const ScenarioKey kScenarioKeys[] = {
    {"learning_duration_s", [](ScenarioSpec& s, double v) { s.learning_duration_s = v; }},
    {"default_duration_s", [](ScenarioSpec& s, double v) { s.default_duration_s = v; }},
    {"map_width", [](ScenarioSpec& s, double v) { s.map_size.x = v; }},
    {"map_height", [](ScenarioSpec& s, double v) { s.map_size.y = v; }},
    {"reservoir_count", [](ScenarioSpec& s, double v) { s.reservoir.count = static_cast<int>(v); }},
    {"reservoir_min_separation", [](ScenarioSpec& s, double v) { s.reservoir.min_separation = v; }},
    {"initial_random_edges",
     [](ScenarioSpec& s, double v) { s.initial_random_edges = static_cast<int>(v); }},
    {"generator_intensity",
     [](ScenarioSpec& s, double v) {
       for (auto& g : s.generators) g.intensity = v;
     }},
    {"generator_period_ms",
     [](ScenarioSpec& s, double v) {
       for (auto& g : s.generators) g.period_ms = v;
     }},
    {"input_period_ms",
     [](ScenarioSpec& s, double v) {
       for (auto& d : s.inputs) d.period_ms = v;
     }},
    {"poisson_lambda",
     [](ScenarioSpec& s, double v) {
       for (auto& c : s.somas) c.poisson_lambda = v;
       s.reservoir.poisson_lambda = v;
     }},
};

}  // namespace

bool has_scenario_key(std::string_view key) {
  for (const auto& k : kScenarioKeys)
    if (k.name == key) return true;
  return false;
}

void set_scenario_key(ScenarioSpec& spec, std::string_view key, double value) {
  for (const auto& k : kScenarioKeys)
    if (k.name == key) {
      k.apply(spec, value);
      return;
    }
  throw ConfigError("unknown scenario key '" + std::string(key) + "'");
}

SimParams scenario_params(const ScenarioSpec& spec, SimParams base) {
  for (const auto& [k, v] : spec.params) set_param(base, k, v);
  return base;
}

std::vector<SomaConfig> resolve_layout(const ScenarioSpec& spec, std::uint64_t seed) {
  std::vector<SomaConfig> out = spec.somas;
  if (spec.reservoir.count <= 0) return out;
  RandomStream rng(RandomStream::derive(seed, kLayoutStream));
  NeuronId next = 0;
  for (const auto& s : out) next = std::max(next, s.id + 1);
  const ReservoirSpec& r = spec.reservoir;
  const double sep2 = r.min_separation * r.min_separation;
  int budget = r.retry_budget;
  for (int placed = 0; placed < r.count;) {
    if (budget-- <= 0)
      throw ConfigError("reservoir placement failed: " + std::to_string(placed) + " of " +
                        std::to_string(r.count) + " somas placed");
    const Vec2 p{rng.uniform(r.lo.x, r.hi.x), rng.uniform(r.lo.y, r.hi.y)};
    bool ok = true;
    for (const auto& s : out)
      if ((s.position - p).norm2() < sep2) {
        ok = false;
        break;
      }
    if (!ok) continue;
    SomaConfig c;
    c.id = next++;
    c.position = p;
    c.stochastic = r.stochastic;
    c.poisson_lambda = r.poisson_lambda;
    out.push_back(c);
    ++placed;
  }
  return out;
}

World build_scenario(const ScenarioSpec& spec, const SimParams& p, std::uint64_t seed,
                     WorldOptions opt) {
  validate_scenario(spec);
  opt.map_size = spec.map_size;
  World w(p, seed, opt);
  const auto layout = resolve_layout(spec, seed);
  for (const auto& c : layout) w.add_soma(c);
  for (const auto& g : spec.generators) w.add_generator(g);
  MasterPattern m;
  m.drives = spec.inputs;
  m.growth_inhibited = spec.growth_inhibited;
  m.learning_duration_ms = spec.learning_duration_s * 1000.0;
  w.set_master(std::move(m));
  if (spec.initial_random_edges > 0) {
    std::vector<NeuronId> pool;
    for (std::size_t i = spec.somas.size(); i < layout.size(); ++i) pool.push_back(layout[i].id);
    const auto n = static_cast<std::int64_t>(pool.size());
    const std::int64_t possible = n * (n - 1);
    if (spec.initial_random_edges > possible)
      throw ConfigError("more initial edges requested than reservoir pairs");
    RandomStream rng(RandomStream::derive(seed, kEdgeStream));
    std::set<Edge> made;
    while (static_cast<int>(made.size()) < spec.initial_random_edges) {
      const NeuronId a = pool[static_cast<std::size_t>(rng.uniform_int(0, n - 1))];
      const NeuronId b = pool[static_cast<std::size_t>(rng.uniform_int(0, n - 1))];
      if (a == b || !made.insert({a, b}).second) continue;
      w.add_connected_cone(a, b);
    }
  }
  return w;
}

IntendedTopology intended_topology(const ScenarioSpec& spec) { return spec.intended; }

std::vector<Edge> realized_edges(const World& w) {
  std::vector<Edge> e;
  for (const auto& c : w.connections()) e.push_back({c.from, c.to});
  return e;
}

RunSummary summarize(const World& w, const ScenarioSpec& spec, std::uint64_t seed) {
  RunSummary s;
  s.scenario = spec.name;
  s.seed = seed;
  s.duration_s = w.now_ms() / 1000.0;
  s.edges = realized_edges(w);
  s.success_rate = success_rate(s.edges, spec.intended);
  std::vector<Edge> partial;
  for (const auto& c : w.connections()) {
    partial.push_back({c.from, c.to});
    if (success_rate(partial, spec.intended) >= 1.0) {
      s.time_to_full_ms = c.time_ms;
      break;
    }
  }
  for (const auto& soma : w.somas()) s.spikes.emplace_back(soma.id, soma.spike_times.size());
  s.state_hash = w.state_hash();
  return s;
}

namespace {

std::string shortest(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace

void write_summary_csv(const std::filesystem::path& path, const RunSummary& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(s.state_hash));
  os << "field,a,b\n";
  os << "scenario," << s.scenario << ",\n";
  os << "seed," << s.seed << ",\n";
  os << "duration_s," << shortest(s.duration_s) << ",\n";
  os << "success_rate," << shortest(s.success_rate) << ",\n";
  os << "time_to_full_ms," << shortest(s.time_to_full_ms) << ",\n";
  os << "state_hash," << hash << ",\n";
  for (const auto& [id, n] : s.spikes) os << "spikes," << id << ',' << n << '\n';
  for (const auto& e : s.edges) os << "edge," << e.from << ',' << e.to << '\n';
  os.flush();
  if (!os) throw IoError("write failed for " + path.string());
}

}  // namespace spinegrow
