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
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "spinegrow/errors.hpp"
#include "spinegrow/params.hpp"
#include "spinegrow/random.hpp"
#include "spinegrow/vec2.hpp"

using namespace spinegrow;

namespace {

bool has_rule(const ValidationReport& r, const std::string& rule) {
  for (const auto& v : r)
    if (v.rule == rule) return true;
  return false;
}

}  // namespace

TEST_SUITE("params") {
  TEST_CASE("defaults validate cleanly") {
    CHECK(validate_params(SimParams{}).empty());
    CHECK_NOTHROW(require_valid(SimParams{}));
  }

  TEST_CASE("default values") {
    SimParams p;
    CHECK(p.u_rest == -70.0);
    CHECK(p.u_threshold == -54.0);
    CHECK(p.pulse_amplitude == 10.0);
    CHECK(p.tau_m == 520.0);
    CHECK(p.sigmoid_k == 13.69);
    CHECK(p.sigmoid_x0 == 1.0);
    CHECK(p.natural_period == 200.0);
    CHECK(p.neuron_delay == 20.0);
    CHECK(p.mu_trigger_noise == 0.02);
    CHECK(p.stdp_A == 1.0);
    CHECK(p.stdp_tau == 10.0);
    CHECK(p.drag_coeff == 0.8);
    CHECK(p.dt == 1.0);
  }

  TEST_CASE("inverted rest and threshold") {
    SimParams p;
    p.u_rest = -54;
    p.u_threshold = -70;
    const auto r = validate_params(p);
    CHECK(has_rule(r, "u_rest < u_threshold"));
    CHECK_THROWS_AS(require_valid(p), ConfigError);
  }

  TEST_CASE("zero membrane time constant") {
    SimParams p;
    p.tau_m = 0;
    CHECK(has_rule(validate_params(p), "tau_m > 0"));
  }

  TEST_CASE("every violation is reported") {
    SimParams p;
    p.tau_m = 0;
    p.mass = -1;
    p.window_attenuation = 2;
    p.dt = std::nan("");
    const auto r = validate_params(p);
    CHECK(has_rule(r, "tau_m > 0"));
    CHECK(has_rule(r, "mass > 0"));
    CHECK(has_rule(r, "0 < window_attenuation <= 1"));
    CHECK(has_rule(r, "finite"));
  }

  TEST_CASE("validation is pure") {
    SimParams p;
    p.stdp_tau = -3;
    const auto a = validate_params(p);
    const auto b = validate_params(p);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].rule == b[i].rule);
  }

  TEST_CASE("membrane time constant") {
    CHECK(membrane_time_constant(40, 0.5) == doctest::Approx(20.0));
    CHECK(membrane_time_constant(1, 1) == doctest::Approx(1.0));
    CHECK(membrane_time_constant(1040, 0.5) == doctest::Approx(520.0));
  }

  TEST_CASE("keyed access and overrides") {
    SimParams p;
    CHECK(param_names().size() == 23);
    CHECK(has_param("tau_m"));
    CHECK_FALSE(has_param("tau"));
    set_param(p, "eta", 2.5);
    CHECK(get_param(p, "eta") == 2.5);
    apply_override(p, "sigma_env_noise=10");
    CHECK(p.sigma_env_noise == 10.0);
    CHECK_THROWS_AS(apply_override(p, "nope=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(p, "eta=abc"), ConfigError);
    CHECK_THROWS_AS(apply_override(p, "eta"), ConfigError);
    CHECK_THROWS_AS(set_param(p, "bogus", 1), ConfigError);
  }

  TEST_CASE("json round trip") {
    SimParams p;
    p.tau_m = 20;
    p.connect_radius = 3.25;
    const SimParams q = params_from_json_text(params_to_json_text(p));
    for (auto name : param_names()) CHECK(get_param(q, name) == get_param(p, name));
  }

  TEST_CASE("json rejects unknown keys and bad values") {
    CHECK_THROWS_AS(params_from_json_text(R"({"tau": 3})"), ConfigError);
    CHECK_THROWS_AS(params_from_json_text(R"({"tau_m": "x"})"), ConfigError);
    CHECK_THROWS(params_from_json_text("{oops"));
    const SimParams p = params_from_json_text(R"({"tau_m": 20})");
    CHECK(p.tau_m == 20);
    CHECK(p.u_rest == -70);
  }

  TEST_CASE("params file") {
    const auto path = std::filesystem::temp_directory_path() / "sg_params_test.json";
    {
      std::ofstream(path) << R"({"eta": 4, "dt": 0.5})";
    }
    const SimParams p = load_params_file(path);
    CHECK(p.eta == 4);
    CHECK(p.dt == 0.5);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_params_file(path), IoError);
  }

  TEST_CASE("vector norm obeys the triangle inequality") {
    RandomStream rng(99);
    for (int i = 0; i < 2000; ++i) {
      const Vec2 a{rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)};
      const Vec2 b{rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)};
      CHECK((a + b).norm() <= a.norm() + b.norm() + 1e-9);
    }
  }
}
