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

// Command-line front end. Talks to the simulator only through the C API.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spinegrow/spinegrow.h"

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string scenario;
  std::string spec;
  std::string params_file;
  std::optional<double> duration_s;
  std::uint64_t seed = 1;
  int runs = 1;
  int jobs = 1;
  std::vector<std::string> sets;
  std::string out;
  std::int64_t kinematics_every = 100;
};

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void raise(sg_status s, const std::string& what, int code = 1) {
  throw Failure{code, what + ": " + sg_status_string(s) + ": " + sg_last_error()};
}

void check(sg_status s, const std::string& what, int code = 1) {
  if (s != SG_OK) raise(s, what, code);
}

template <class T, void (*Destroy)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(p); }
};

using Params = Handle<sg_params, sg_params_destroy>;
using Scenario = Handle<sg_scenario, sg_scenario_destroy>;
using Sim = Handle<sg_sim, sg_sim_destroy>;

std::string default_out() {
  const char* env = std::getenv("SPINEGROW_OUT");
  return env && *env ? env : ".";
}

// Resolves scenario + parameter layering: defaults, scenario values,
// parameter file, then --set overrides.
void prepare(const RunConfig& cfg, Scenario& sc, Params& pr) {
  if (cfg.scenario.empty() == cfg.spec.empty())
    throw Failure{2, "give exactly one of --scenario or --spec"};
  if (!cfg.scenario.empty())
    check(sg_scenario_create(cfg.scenario.c_str(), &sc.p), "scenario", 2);
  else
    check(sg_scenario_load(cfg.spec.c_str(), &sc.p), "spec", 2);
  check(sg_params_create(&pr.p), "params");
  check(sg_scenario_apply_params(sc.p, pr.p), "scenario params", 2);
  if (!cfg.params_file.empty()) check(sg_params_load(pr.p, cfg.params_file.c_str()), "params file", 2);
  for (const auto& s : cfg.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Failure{2, "override '" + s + "' is not key=value"};
    const std::string key = s.substr(0, eq);
    if (sg_is_param_key(key.c_str())) {
      check(sg_params_apply(pr.p, s.c_str()), "override " + s, 2);
    } else if (sg_is_scenario_key(key.c_str())) {
      char* end = nullptr;
      const std::string text = s.substr(eq + 1);
      const double v = std::strtod(text.c_str(), &end);
      if (text.empty() || *end != '\0') throw Failure{2, "override '" + s + "': bad number"};
      check(sg_scenario_set(sc.p, key.c_str(), v), "override " + s, 2);
    } else {
      throw Failure{2, "unknown key in override '" + s + "'"};
    }
  }
  size_t bad = 0;
  check(sg_params_validate(pr.p, &bad), "params", 2);
}

double duration_of(const RunConfig& cfg, const Scenario& sc) {
  double d = 0;
  if (cfg.duration_s) {
    d = *cfg.duration_s;
  } else {
    check(sg_scenario_default_duration(sc.p, &d), "duration");
  }
  if (!(d > 0)) throw Failure{2, "--duration-s must be positive"};
  return d;
}

struct RunOutcome {
  double success_rate = 0.0;
  std::size_t connections = 0;
};

RunOutcome run_one(const Scenario& sc, const Params& pr, std::uint64_t seed, double duration_s,
                   std::int64_t kinematics_every, const fs::path& out) {
  Sim sim;
  check(sg_sim_create(sc.p, pr.p, seed, kinematics_every, &sim.p), "create");
  check(sg_sim_run(sim.p, duration_s), "run (seed " + std::to_string(seed) + ")");
  const std::string stem = "run-" + std::to_string(seed);
  check(sg_sim_write_log(sim.p, (out / (stem + ".csv")).string().c_str()), "log");
  check(sg_sim_write_summary(sim.p, (out / (stem + ".summary.csv")).string().c_str()), "summary");
  RunOutcome o;
  check(sg_sim_success_rate(sim.p, &o.success_rate), "success");
  check(sg_sim_connection_count(sim.p, &o.connections), "connections");
  return o;
}

fs::path ensure_dir(const RunConfig& cfg) {
  fs::path out = cfg.out.empty() ? default_out() : cfg.out;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Failure{1, "cannot create " + out.string() + ": " + ec.message()};
  return out;
}

int cmd_run(const RunConfig& cfg) {
  Scenario sc;
  Params pr;
  prepare(cfg, sc, pr);
  const double d = duration_of(cfg, sc);
  const fs::path out = ensure_dir(cfg);
  const auto o = run_one(sc, pr, cfg.seed, d, cfg.kinematics_every, out);
  std::printf("seed %llu: success_rate %.4f, %zu connections\n",
              static_cast<unsigned long long>(cfg.seed), o.success_rate, o.connections);
  return 0;
}

int cmd_batch(const RunConfig& cfg) {
  if (cfg.runs < 1) throw Failure{2, "--runs must be >= 1"};
  if (cfg.jobs < 1) throw Failure{2, "--jobs must be >= 1"};
  Scenario sc;
  Params pr;
  prepare(cfg, sc, pr);
  const double d = duration_of(cfg, sc);
  const fs::path out = ensure_dir(cfg);

  struct Slot {
    bool ok = false;
    double rate = 0.0;
    std::string error;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(cfg.runs));
  std::atomic<int> next{0};
  std::mutex print;
  auto worker = [&] {
    for (int i; (i = next++) < cfg.runs;) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
      Slot& s = slots[static_cast<std::size_t>(i)];
      try {
        s.rate = run_one(sc, pr, seed, d, cfg.kinematics_every, out).success_rate;
        s.ok = true;
      } catch (const Failure& f) {
        s.error = f.message;
      }
      std::lock_guard lock(print);
      if (s.ok)
        std::printf("seed %llu: success_rate %.4f\n", static_cast<unsigned long long>(seed), s.rate);
      else
        std::fprintf(stderr, "seed %llu: failed: %s\n", static_cast<unsigned long long>(seed),
                     s.error.c_str());
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min(cfg.jobs, cfg.runs);
  for (int j = 1; j < n; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const fs::path summary = out / "batch.summary.csv";
  std::ofstream os(summary, std::ios::binary);
  if (!os) throw Failure{1, "cannot write " + summary.string()};
  os << "run,seed,status,success_rate\n";
  double sum = 0;
  int ok = 0;
  for (int i = 0; i < cfg.runs; ++i) {
    const auto& s = slots[static_cast<std::size_t>(i)];
    os << i << ',' << cfg.seed + static_cast<std::uint64_t>(i) << ',' << (s.ok ? "ok" : "failed")
       << ',';
    if (s.ok) {
      os << s.rate;
      sum += s.rate;
      ++ok;
    }
    os << '\n';
  }
  os << "mean,,," ;
  if (ok > 0) os << sum / ok;
  os << '\n';
  os.close();
  if (ok > 0)
    std::printf("mean success_rate %.4f over %d of %d runs\n", sum / ok, ok, cfg.runs);
  return ok == 0 ? 1 : 0;
}

struct AnalyzeConfig {
  std::string kind;
  std::string in;
  std::string prefix;
  sg_analyze_options o{};
  std::string scenario;
};

int cmd_analyze(AnalyzeConfig& a) {
  if (a.prefix.empty()) {
    fs::path in(a.in);
    a.prefix = (in.parent_path() / in.stem()).string() + "." + a.kind;
  }
  if (!a.scenario.empty()) a.o.scenario = a.scenario.c_str();
  check(sg_analyze(a.kind.c_str(), a.in.c_str(), a.prefix.c_str(), &a.o), "analyze " + a.kind);
  std::ifstream stats(a.prefix + ".stats.csv");
  std::cout << stats.rdbuf();
  return 0;
}

void add_run_options(CLI::App* cmd, RunConfig& cfg) {
  auto* sc = cmd->add_option("--scenario", cfg.scenario, "built-in scenario name");
  cmd->add_option("--spec", cfg.spec, "scenario file (JSON)")->excludes(sc);
  cmd->add_option("--params", cfg.params_file, "parameter file (JSON)");
  cmd->add_option("--duration-s", cfg.duration_s, "simulated seconds");
  cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  cmd->add_option("--set", cfg.sets, "key=value override, repeatable");
  cmd->add_option("--out", cfg.out, "output directory (default $SPINEGROW_OUT or .)");
  cmd->add_option("--kinematics-every", cfg.kinematics_every,
                  "ticks between kinematics records, 0 disables")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinegrow: growing spiking network simulator"};
  app.require_subcommand(1);

  RunConfig run_cfg;
  auto* run = app.add_subcommand("run", "run one simulation");
  add_run_options(run, run_cfg);

  RunConfig batch_cfg;
  auto* batch = app.add_subcommand("batch", "run seeds seed..seed+runs-1");
  add_run_options(batch, batch_cfg);
  batch->add_option("--runs", batch_cfg.runs, "number of runs")->capture_default_str();
  batch->add_option("--jobs", batch_cfg.jobs, "parallel workers")->capture_default_str();

  AnalyzeConfig an;
  sg_analyze_options_init(&an.o);
  auto* analyze = app.add_subcommand("analyze", "analyze a run log");
  analyze->add_option("kind", an.kind, "hist1d | hist2d | success | trace")
      ->required()
      ->check(CLI::IsMember({"hist1d", "hist2d", "success", "trace"}));
  analyze->add_option("log", an.in, "run log CSV")->required();
  analyze->add_option("--out-prefix", an.prefix, "output path prefix");
  analyze->add_option("--bin-width", an.o.bin_width_ms, "bin width, ms");
  analyze->add_option("--range", an.o.range_ms, "2-D histogram range, ms");
  analyze->add_option("--after-ms", an.o.after_ms, "ignore spikes before this time");
  analyze->add_option("--neuron", an.o.neuron, "neuron for hist1d");
  analyze->add_option("--out-neuron", an.o.out_neuron, "output neuron for hist2d");
  analyze->add_option("--in1", an.o.in1_neuron, "first input neuron for hist2d");
  analyze->add_option("--in2", an.o.in2_neuron, "second input neuron for hist2d");
  analyze->add_option("--period", an.o.period_ms, "period for the offset mass, ms");
  analyze->add_option("--period-tol", an.o.period_tol_ms, "tolerance around the period, ms");
  analyze->add_option("--agent", an.o.agent_id, "cone id for trace");
  analyze->add_option("--smooth", an.o.smoothing_window, "moving-average window for trace");
  analyze->add_option("--scenario", an.scenario, "scenario name or scenario file for success");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_cfg);
    if (*batch) return cmd_batch(batch_cfg);
    if (*analyze) return cmd_analyze(an);
  } catch (const Failure& f) {
    std::fprintf(stderr, "spinegrow: %s\n", f.message.c_str());
    return f.code;
  }
  return 0;
}
