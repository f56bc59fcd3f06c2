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

#include "spinegrow/spinegrow.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>
#include <string_view>
#include <utility>

#include "spinegrow/errors.hpp"
#include "spinegrow/params.hpp"
#include "spinegrow/scenario.hpp"
#include "spinegrow/telemetry.hpp"
#include "spinegrow/world.hpp"

struct sg_params {
  spinegrow::SimParams p;
};

struct sg_scenario {
  spinegrow::ScenarioSpec spec;
};

struct sg_sim {
  spinegrow::ScenarioSpec spec;
  std::uint64_t seed;
  spinegrow::World world;
};

namespace {

thread_local std::string g_last_error;

sg_status fail(sg_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
sg_status guarded(F&& f) {
  using namespace spinegrow;
  try {
    g_last_error.clear();
    return f();
  } catch (const ParseError& e) {
    return fail(SG_ERR_PARSE, e.what());
  } catch (const DomainError& e) {
    return fail(SG_ERR_DOMAIN, e.what());
  } catch (const NumericError& e) {
    return fail(SG_ERR_NUMERIC, e.what());
  } catch (const GeometryError& e) {
    return fail(SG_ERR_NUMERIC, e.what());
  } catch (const IoError& e) {
    return fail(SG_ERR_IO, e.what());
  } catch (const LookupError& e) {
    return fail(SG_ERR_NOT_FOUND, e.what());
  } catch (const ConfigError& e) {
    return fail(SG_ERR_CONFIG, e.what());
  } catch (const EmptyDataError& e) {
    return fail(SG_ERR_EMPTY_DATA, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SG_ERR_INTERNAL, "unknown error");
  }
}

#define SG_REQUIRE(cond)                                                 \
  do {                                                                   \
    if (!(cond)) return fail(SG_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

spinegrow::ScenarioSpec scenario_by_name_or_path(const std::string& what) {
  for (auto n : spinegrow::scenario_names())
    if (n == what) return spinegrow::builtin_scenario(what);
  if (std::filesystem::exists(what)) return spinegrow::load_scenario_file(what);
  throw spinegrow::LookupError("unknown scenario '" + what + "'");
}

std::vector<double> spikes_after(std::span<const spinegrow::Record> recs, std::int64_t neuron,
                                 double after) {
  std::vector<double> t;
  for (double s : spinegrow::spike_times(recs, neuron))
    if (s >= after) t.push_back(s);
  return t;
}

}  // namespace

extern "C" {

const char* sg_version(void) { return "1.0.0"; }

const char* sg_status_string(sg_status s) {
  switch (s) {
    case SG_OK: return "ok";
    case SG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SG_ERR_DOMAIN: return "domain error";
    case SG_ERR_NUMERIC: return "numeric error";
    case SG_ERR_IO: return "i/o error";
    case SG_ERR_PARSE: return "parse error";
    case SG_ERR_NOT_FOUND: return "not found";
    case SG_ERR_CONFIG: return "configuration error";
    case SG_ERR_EMPTY_DATA: return "empty data";
    case SG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sg_last_error(void) { return g_last_error.c_str(); }

sg_status sg_params_create(sg_params** out) {
  SG_REQUIRE(out);
  return guarded([&] {
    *out = new sg_params{};
    return SG_OK;
  });
}

void sg_params_destroy(sg_params* p) { delete p; }

sg_status sg_params_set(sg_params* p, const char* key, double value) {
  SG_REQUIRE(p && key);
  return guarded([&] {
    spinegrow::set_param(p->p, key, value);
    return SG_OK;
  });
}

sg_status sg_params_get(const sg_params* p, const char* key, double* out) {
  SG_REQUIRE(p && key && out);
  return guarded([&] {
    *out = spinegrow::get_param(p->p, key);
    return SG_OK;
  });
}

sg_status sg_params_apply(sg_params* p, const char* assignment) {
  SG_REQUIRE(p && assignment);
  return guarded([&] {
    spinegrow::apply_override(p->p, assignment);
    return SG_OK;
  });
}

sg_status sg_params_load(sg_params* p, const char* path) {
  SG_REQUIRE(p && path);
  return guarded([&] {
    p->p = spinegrow::load_params_file(path, p->p);
    return SG_OK;
  });
}

sg_status sg_params_validate(const sg_params* p, size_t* violations) {
  SG_REQUIRE(p);
  return guarded([&] {
    auto report = spinegrow::validate_params(p->p);
    if (violations) *violations = report.size();
    if (report.empty()) return SG_OK;
    std::string msg;
    for (const auto& v : report) msg += (msg.empty() ? "" : "; ") + v.field + ": " + v.rule;
    return fail(SG_ERR_CONFIG, msg);
  });
}

int sg_is_param_key(const char* key) { return key && spinegrow::has_param(key) ? 1 : 0; }

size_t sg_param_count(void) { return spinegrow::param_names().size(); }

const char* sg_param_name(size_t i) {
  auto names = spinegrow::param_names();
  return i < names.size() ? names[i].data() : nullptr;
}

size_t sg_scenario_name_count(void) { return spinegrow::scenario_names().size(); }

const char* sg_scenario_name(size_t i) {
  auto names = spinegrow::scenario_names();
  return i < names.size() ? names[i].data() : nullptr;
}

sg_status sg_scenario_create(const char* name, sg_scenario** out) {
  SG_REQUIRE(name && out);
  return guarded([&] {
    *out = new sg_scenario{spinegrow::builtin_scenario(name)};
    return SG_OK;
  });
}

sg_status sg_scenario_load(const char* path, sg_scenario** out) {
  SG_REQUIRE(path && out);
  return guarded([&] {
    *out = new sg_scenario{spinegrow::load_scenario_file(path)};
    return SG_OK;
  });
}

void sg_scenario_destroy(sg_scenario* s) { delete s; }

int sg_is_scenario_key(const char* key) { return key && spinegrow::has_scenario_key(key) ? 1 : 0; }

sg_status sg_scenario_set(sg_scenario* s, const char* key, double value) {
  SG_REQUIRE(s && key);
  return guarded([&] {
    spinegrow::set_scenario_key(s->spec, key, value);
    return SG_OK;
  });
}

sg_status sg_scenario_default_duration(const sg_scenario* s, double* seconds) {
  SG_REQUIRE(s && seconds);
  *seconds = s->spec.default_duration_s;
  return SG_OK;
}

sg_status sg_scenario_apply_params(const sg_scenario* s, sg_params* p) {
  SG_REQUIRE(s && p);
  return guarded([&] {
    p->p = spinegrow::scenario_params(s->spec, p->p);
    return SG_OK;
  });
}

sg_status sg_scenario_write(const sg_scenario* s, const char* path) {
  SG_REQUIRE(s && path);
  return guarded([&] {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw spinegrow::IoError(std::string("cannot write ") + path);
    os << spinegrow::scenario_to_json_text(s->spec) << '\n';
    if (!os) throw spinegrow::IoError(std::string("write failed for ") + path);
    return SG_OK;
  });
}

sg_status sg_sim_create(const sg_scenario* s, const sg_params* p, uint64_t seed,
                        int64_t kinematics_every, sg_sim** out) {
  SG_REQUIRE(s && p && out);
  if (kinematics_every < 0) return fail(SG_ERR_INVALID_ARGUMENT, "kinematics_every must be >= 0");
  return guarded([&] {
    spinegrow::WorldOptions opt;
    opt.kinematics_every = kinematics_every;
    *out = new sg_sim{s->spec, seed, spinegrow::build_scenario(s->spec, p->p, seed, opt)};
    return SG_OK;
  });
}

void sg_sim_destroy(sg_sim* sim) { delete sim; }

sg_status sg_sim_run(sg_sim* sim, double duration_s) {
  SG_REQUIRE(sim);
  if (!(duration_s > 0)) return fail(SG_ERR_INVALID_ARGUMENT, "duration must be positive");
  return guarded([&] {
    sim->world.run_ms(duration_s * 1000.0);
    return SG_OK;
  });
}

sg_status sg_sim_step(sg_sim* sim, int64_t ticks) {
  SG_REQUIRE(sim);
  if (ticks < 0) return fail(SG_ERR_INVALID_ARGUMENT, "ticks must be >= 0");
  return guarded([&] {
    sim->world.run_ticks(ticks);
    return SG_OK;
  });
}

sg_status sg_sim_time_ms(const sg_sim* sim, double* out) {
  SG_REQUIRE(sim && out);
  *out = sim->world.now_ms();
  return SG_OK;
}

sg_status sg_sim_success_rate(const sg_sim* sim, double* out) {
  SG_REQUIRE(sim && out);
  return guarded([&] {
    *out = spinegrow::success_rate(spinegrow::realized_edges(sim->world), sim->spec.intended);
    return SG_OK;
  });
}

sg_status sg_sim_state_hash(const sg_sim* sim, uint64_t* out) {
  SG_REQUIRE(sim && out);
  *out = sim->world.state_hash();
  return SG_OK;
}

sg_status sg_sim_neuron_count(const sg_sim* sim, size_t* out) {
  SG_REQUIRE(sim && out);
  *out = sim->world.somas().size();
  return SG_OK;
}

sg_status sg_sim_spike_count(const sg_sim* sim, int64_t neuron, size_t* out) {
  SG_REQUIRE(sim && out);
  return guarded([&] {
    *out = sim->world.soma(neuron).spike_times.size();
    return SG_OK;
  });
}

sg_status sg_sim_connection_count(const sg_sim* sim, size_t* out) {
  SG_REQUIRE(sim && out);
  *out = sim->world.connections().size();
  return SG_OK;
}

sg_status sg_sim_connection(const sg_sim* sim, size_t i, int64_t* from, int64_t* to,
                            double* time_ms) {
  SG_REQUIRE(sim);
  const auto& c = sim->world.connections();
  if (i >= c.size()) return fail(SG_ERR_NOT_FOUND, "connection index out of range");
  if (from) *from = c[i].from;
  if (to) *to = c[i].to;
  if (time_ms) *time_ms = c[i].time_ms;
  return SG_OK;
}

sg_status sg_sim_write_log(const sg_sim* sim, const char* path) {
  SG_REQUIRE(sim && path);
  return guarded([&] {
    spinegrow::write_log(std::filesystem::path(path), sim->world.records());
    return SG_OK;
  });
}

sg_status sg_sim_write_summary(const sg_sim* sim, const char* path) {
  SG_REQUIRE(sim && path);
  return guarded([&] {
    spinegrow::write_summary_csv(path, spinegrow::summarize(sim->world, sim->spec, sim->seed));
    return SG_OK;
  });
}

void sg_analyze_options_init(sg_analyze_options* o) {
  if (!o) return;
  *o = sg_analyze_options{};
  o->in1_neuron = 0;
  o->in2_neuron = 1;
  o->out_neuron = 3;
}

sg_status sg_analyze(const char* kind, const char* in_path, const char* out_prefix,
                     const sg_analyze_options* opts) {
  SG_REQUIRE(kind && in_path && out_prefix);
  const std::string_view kinds[] = {"hist1d", "hist2d", "success", "trace"};
  if (std::find(std::begin(kinds), std::end(kinds), std::string_view(kind)) == std::end(kinds))
    return fail(SG_ERR_INVALID_ARGUMENT, std::string("unknown analysis kind '") + kind + "'");
  sg_analyze_options o;
  sg_analyze_options_init(&o);
  if (opts) o = *opts;
  return guarded([&] {
    using namespace spinegrow;
    const std::string k = kind;
    const std::string prefix = out_prefix;
    const auto recs = read_log(std::filesystem::path(in_path));
    std::vector<std::pair<std::string, double>> stats;
    if (k == "hist1d") {
      auto h = firing_histogram_1d(spikes_after(recs, o.neuron, o.after_ms),
                                   o.bin_width_ms > 0 ? o.bin_width_ms : 10.0);
      write_hist1d_csv(prefix + ".hist.csv", h);
      stats = {{"n", static_cast<double>(h.n)}, {"mean", h.mean},        {"median", h.median},
               {"mode", h.mode},                {"bin_width", h.bin_width}};
    } else if (k == "hist2d") {
      auto h = correlation_histogram_2d(spikes_after(recs, o.out_neuron, o.after_ms),
                                        spike_times(recs, o.in1_neuron),
                                        spike_times(recs, o.in2_neuron),
                                        o.bin_width_ms > 0 ? o.bin_width_ms : 5.0,
                                        o.range_ms > 0 ? o.range_ms : 250.0);
      write_hist2d_csv(prefix + ".hist.csv", h);
      const double period = o.period_ms > 0 ? o.period_ms : 200.0;
      const double tol = o.period_tol_ms > 0 ? o.period_tol_ms : 20.0;
      stats = {{"paired", static_cast<double>(h.paired)},
               {"dropped", static_cast<double>(h.dropped)},
               {"outside", static_cast<double>(h.outside)},
               {"modal_dt1", h.modal_dt1()},
               {"modal_dt2", h.modal_dt2()},
               {"mean_dt1", h.mean1},
               {"mean_dt2", h.mean2},
               {"dispersion", h.dispersion},
               {"period_mass", period_offset_mass(h, period, tol)}};
    } else if (k == "success") {
      if (!o.scenario) throw ConfigError("success analysis needs a scenario");
      const auto spec = scenario_by_name_or_path(o.scenario);
      const auto edges = edges_from_records(recs);
      stats = {{"success_rate", success_rate(edges, spec.intended)},
               {"realized_edges", static_cast<double>(edges.size())},
               {"intended_edges", static_cast<double>(spec.intended.edges.size())}};
    } else {
      auto t = kinematics_trace(recs, o.agent_id, o.smoothing_window);
      write_trace_csv(prefix + ".trace.csv", t);
      stats = {{"samples", static_cast<double>(t.size())},
               {"agent_id", static_cast<double>(o.agent_id)},
               {"smoothing_window", static_cast<double>(o.smoothing_window)}};
    }
    write_stats_csv(prefix + ".stats.csv", stats);
    return SG_OK;
  });
}

}  // extern "C"
