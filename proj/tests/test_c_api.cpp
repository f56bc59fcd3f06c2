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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "spinegrow/spinegrow.h"

extern "C" int sg_c_header_check(void);

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const char* name) {
  auto d = std::filesystem::temp_directory_path() / "sg_c_api_test";
  std::filesystem::create_directories(d);
  return d / name;
}

}  // namespace

TEST_CASE("header compiles as C") { CHECK(sg_c_header_check() == 0); }

TEST_CASE("version and status strings") {
  CHECK(std::strlen(sg_version()) > 0);
  CHECK(std::string(sg_status_string(SG_OK)) != std::string(sg_status_string(SG_ERR_IO)));
}

TEST_CASE("params handle") {
  sg_params* p = nullptr;
  REQUIRE(sg_params_create(&p) == SG_OK);
  double v = 0;
  CHECK(sg_params_get(p, "u_rest", &v) == SG_OK);
  CHECK(v == -70.0);
  CHECK(sg_params_set(p, "eta", 2) == SG_OK);
  CHECK(sg_params_apply(p, "dt=0.5") == SG_OK);
  CHECK(sg_params_get(p, "dt", &v) == SG_OK);
  CHECK(v == 0.5);
  CHECK(sg_params_set(p, "nope", 1) == SG_ERR_CONFIG);
  CHECK(std::strstr(sg_last_error(), "nope") != nullptr);
  CHECK(sg_params_get(p, "u_rest", nullptr) == SG_ERR_INVALID_ARGUMENT);
  CHECK(sg_params_create(nullptr) == SG_ERR_INVALID_ARGUMENT);

  size_t n = 99;
  CHECK(sg_params_validate(p, &n) == SG_OK);
  CHECK(n == 0);
  sg_params_set(p, "tau_m", 0);
  CHECK(sg_params_validate(p, &n) == SG_ERR_CONFIG);
  CHECK(n == 1);
  CHECK(sg_params_load(p, "/nonexistent/params.json") == SG_ERR_IO);

  CHECK(sg_is_param_key("tau_m") == 1);
  CHECK(sg_is_param_key("tau") == 0);
  CHECK(sg_param_count() == 23);
  CHECK(std::string(sg_param_name(0)) == "u_rest");
  CHECK(sg_param_name(1000) == nullptr);
  sg_params_destroy(p);
  sg_params_destroy(nullptr);
}

TEST_CASE("scenario handle") {
  CHECK(sg_scenario_name_count() == 6);
  sg_scenario* s = nullptr;
  CHECK(sg_scenario_create("nope", &s) == SG_ERR_NOT_FOUND);
  REQUIRE(sg_scenario_create("neuron_pair", &s) == SG_OK);
  double d = 0;
  CHECK(sg_scenario_default_duration(s, &d) == SG_OK);
  CHECK(d == 600.0);
  CHECK(sg_scenario_set(s, "default_duration_s", 12) == SG_OK);
  CHECK(sg_scenario_set(s, "no_such", 1) == SG_ERR_CONFIG);
  CHECK(sg_is_scenario_key("map_width") == 1);

  const auto path = scratch("pair.json");
  CHECK(sg_scenario_write(s, path.string().c_str()) == SG_OK);
  sg_scenario* back = nullptr;
  REQUIRE(sg_scenario_load(path.string().c_str(), &back) == SG_OK);
  CHECK(sg_scenario_default_duration(back, &d) == SG_OK);
  CHECK(d == 12.0);
  sg_scenario_destroy(back);
  sg_scenario_destroy(s);

  std::ofstream(scratch("broken.json")) << "{\"somas\": ";
  CHECK(sg_scenario_load(scratch("broken.json").string().c_str(), &back) == SG_ERR_PARSE);
}

TEST_CASE("simulation handle") {
  sg_scenario* s = nullptr;
  sg_params* p = nullptr;
  REQUIRE(sg_scenario_create("extended_coincidence_detector", &s) == SG_OK);
  REQUIRE(sg_params_create(&p) == SG_OK);
  REQUIRE(sg_scenario_apply_params(s, p) == SG_OK);
  double amp = 0;
  sg_params_get(p, "pulse_amplitude", &amp);
  CHECK(amp == 6.0);

  sg_sim* a = nullptr;
  sg_sim* b = nullptr;
  REQUIRE(sg_sim_create(s, p, 5, 10, &a) == SG_OK);
  REQUIRE(sg_sim_create(s, p, 5, 10, &b) == SG_OK);
  CHECK(sg_sim_run(a, 30) == SG_OK);
  CHECK(sg_sim_step(b, 30000) == SG_OK);
  double t = 0;
  sg_sim_time_ms(a, &t);
  CHECK(t == 30000.0);
  uint64_t ha = 0, hb = 1;
  sg_sim_state_hash(a, &ha);
  sg_sim_state_hash(b, &hb);
  CHECK(ha == hb);

  size_t n = 0, spikes = 0;
  CHECK(sg_sim_neuron_count(a, &n) == SG_OK);
  CHECK(n == 4);
  CHECK(sg_sim_spike_count(a, 3, &spikes) == SG_OK);
  CHECK(spikes > 100);
  CHECK(sg_sim_spike_count(a, 42, &spikes) == SG_ERR_NOT_FOUND);
  size_t conns = 0;
  CHECK(sg_sim_connection_count(a, &conns) == SG_OK);
  int64_t from = 0, to = 0;
  double when = 0;
  CHECK(sg_sim_connection(a, conns, &from, &to, &when) == SG_ERR_NOT_FOUND);
  double rate = -1;
  CHECK(sg_sim_success_rate(a, &rate) == SG_OK);
  CHECK(rate >= 0.0);
  CHECK(sg_sim_run(a, -1) == SG_ERR_INVALID_ARGUMENT);

  const auto log = scratch("ecd.csv");
  const auto sum = scratch("ecd.summary.csv");
  CHECK(sg_sim_write_log(a, log.string().c_str()) == SG_OK);
  CHECK(sg_sim_write_summary(a, sum.string().c_str()) == SG_OK);
  CHECK(slurp(sum).find("scenario,extended_coincidence_detector,") != std::string::npos);
  CHECK(sg_sim_write_log(a, "/nonexistent/dir/x.csv") == SG_ERR_IO);

  sg_analyze_options o;
  sg_analyze_options_init(&o);
  const auto prefix = scratch("ecd").string();
  CHECK(sg_analyze("hist1d", log.string().c_str(), prefix.c_str(), &o) == SG_OK);
  CHECK(slurp(prefix + ".hist.csv").rfind("bin_lo,bin_hi,count,density\n", 0) == 0);
  CHECK(slurp(prefix + ".stats.csv").find("median,") != std::string::npos);
  CHECK(sg_analyze("hist2d", log.string().c_str(), prefix.c_str(), &o) == SG_OK);
  CHECK(slurp(prefix + ".hist.csv").rfind("dt1_lo,dt1_hi,dt2_lo,dt2_hi,count\n", 0) == 0);
  o.agent_id = 0;
  CHECK(sg_analyze("trace", log.string().c_str(), prefix.c_str(), &o) == SG_OK);
  CHECK(slurp(prefix + ".trace.csv").rfind("time_ms,vx,vy,ax,ay\n", 0) == 0);
  o.agent_id = 999;
  CHECK(sg_analyze("trace", log.string().c_str(), prefix.c_str(), &o) == SG_ERR_NOT_FOUND);
  o.scenario = "extended_coincidence_detector";
  CHECK(sg_analyze("success", log.string().c_str(), prefix.c_str(), &o) == SG_OK);
  CHECK(sg_analyze("wavelet", log.string().c_str(), prefix.c_str(), &o) == SG_ERR_INVALID_ARGUMENT);
  o.neuron = 77;
  CHECK(sg_analyze("hist1d", log.string().c_str(), prefix.c_str(), &o) == SG_ERR_EMPTY_DATA);

  sg_sim_destroy(a);
  sg_sim_destroy(b);
  sg_params_destroy(p);
  sg_scenario_destroy(s);
}
