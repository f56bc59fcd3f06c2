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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinegrow/errors.hpp"
#include "spinegrow/scenario.hpp"
#include "spinegrow/telemetry.hpp"

using namespace spinegrow;
using doctest::Approx;

TEST_SUITE("telemetry") {
  TEST_CASE("empty log is header only") {
    std::stringstream ss;
    write_log(ss, {});
    CHECK(ss.str() == std::string(kLogHeader) + "\n");
    CHECK(read_log(ss).empty());
  }

  TEST_CASE("spike row format") {
    Record r;
    r.time_ms = 20;
    r.kind = RecordKind::spike;
    r.neuron_id = 3;
    CHECK(format_record(r) == "20,spike,3,,,,,,,,,");
    r.value = -61.25;
    r.x = 0.1;
    CHECK(format_record(r) == "20,spike,3,,0.1,,,,,,,-61.25");
  }

  TEST_CASE("record round trip") {
    Record r;
    r.time_ms = 1234.5;
    r.kind = RecordKind::kinematics;
    r.agent_id = 7;
    r.vx = 1.0 / 3.0;
    r.ay = -2e-300;
    CHECK(parse_record(format_record(r)) == r);
  }

  TEST_CASE("parse errors carry the line") {
    std::stringstream ss;
    ss << kLogHeader << "\n1,spike,0,,,,,,,,,\n2,spike,0,,,\n";
    try {
      read_log(ss);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    std::stringstream bad_header("time,kind\n");
    CHECK_THROWS_AS(read_log(bad_header), ParseError);
    CHECK_THROWS_AS(parse_record("1,teleport,,,,,,,,,,"), ParseError);
    CHECK_THROWS_AS(parse_record("x,spike,,,,,,,,,,"), ParseError);
    CHECK_THROWS_AS(read_log(std::filesystem::path("/nonexistent/log.csv")), IoError);
  }

  TEST_CASE("interval histogram of a regular train") {
    std::vector<double> t;
    for (int i = 0; i < 50; ++i) t.push_back(100.0 * i);
    const Histogram1D h = firing_histogram_1d(t, 10);
    CHECK(h.n == 49);
    CHECK(h.mean == Approx(100.0));
    CHECK(h.median == Approx(100.0));
    int nonzero = 0;
    for (auto c : h.counts) nonzero += c ? 1 : 0;
    CHECK(nonzero == 1);
    CHECK(h.mode == Approx(105.0));
    CHECK_THROWS_AS(firing_histogram_1d(std::vector<double>{5.0}), EmptyDataError);
    CHECK_THROWS_AS(histogram_1d(std::vector<double>{1.0}, 0.0), DomainError);
  }

  TEST_CASE("histogram statistics") {
    const std::vector<double> xs{1, 2, 2, 3, 10};
    const Histogram1D h = histogram_1d(xs, 1);
    CHECK(h.mean == Approx(3.6));
    CHECK(h.median == Approx(2.0));
    CHECK(h.mode == Approx(2.5));
    double area = 0;
    for (double d : h.density) area += d * h.bin_width;
    CHECK(area == Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("constructed 2-D fixture") {
    std::vector<double> in1, in2, out;
    for (int i = 0; i < 200; ++i) {
      const double t = 1000.0 + 200.0 * i;
      in1.push_back(t);
      in2.push_back(t - 10);
      out.push_back(t + 15);
    }
    const Histogram2D h = correlation_histogram_2d(out, in1, in2);
    CHECK(h.paired == 200);
    CHECK(h.modal_dt1() == Approx(17.5));
    CHECK(h.modal_dt2() == Approx(27.5));
    CHECK(h.at(3, 5) == 200);
    CHECK(h.dispersion == Approx(0.0));
    CHECK(period_offset_mass(h, 200, 20) == 0.0);
  }

  TEST_CASE("2-D pairing is translation invariant") {
    std::vector<double> in1{0, 37, 250, 410}, in2{5, 90, 300}, out{3, 40, 95, 305, 420, 800};
    const Histogram2D a = correlation_histogram_2d(out, in1, in2);
    for (auto* v : {&in1, &in2, &out})
      for (double& t : *v) t += 12345;
    const Histogram2D b = correlation_histogram_2d(out, in1, in2);
    CHECK(a.counts == b.counts);
    CHECK(a.dropped == b.dropped);
    CHECK(a.dispersion == Approx(b.dispersion));
  }

  TEST_CASE("2-D drops outputs without both predecessors") {
    const Histogram2D h = correlation_histogram_2d(std::vector<double>{1, 10, 400},
                                                   std::vector<double>{5}, std::vector<double>{8});
    CHECK(h.dropped == 1);
    CHECK(h.paired == 2);
    CHECK(h.outside == 1);
    CHECK_THROWS_AS(correlation_histogram_2d(std::vector<double>{1}, std::vector<double>{5},
                                             std::vector<double>{8}),
                    EmptyDataError);
  }

  TEST_CASE("period offset mass") {
    std::vector<double> in1{0}, in2{0}, out{20, 205, 410};
    const Histogram2D h = correlation_histogram_2d(out, in1, in2, 5, 500);
    CHECK(period_offset_mass(h, 200, 20) == Approx(2.0 / 3.0));
  }

  TEST_CASE("success rate") {
    IntendedTopology chain;
    for (std::int64_t i = 1; i < 8; ++i) chain.edges.push_back({i, i - 1});
    CHECK(success_rate(chain.edges, chain) == 1.0);
    const std::vector<Edge> four{{1, 0}, {2, 1}, {5, 4}, {7, 6}, {0, 7}};
    CHECK(success_rate(four, chain) == Approx(4.0 / 7.0));
    CHECK(std::round(success_rate(four, chain) * 1000) / 1000 == Approx(0.571));

    IntendedTopology reach;
    reach.reachability = true;
    reach.inputs = {0, 1};
    reach.output = 9;
    // signals run from `to` into `from`: 0 -> 5 -> 9 and 1 -> 9
    const std::vector<Edge> ok{{5, 0}, {9, 5}, {9, 1}};
    CHECK(success_rate(ok, reach) == 1.0);
    const std::vector<Edge> half{{5, 0}, {9, 5}};
    CHECK(success_rate(half, reach) == 0.0);
    CHECK(signal_path_exists(ok, 0, 9));
    CHECK_FALSE(signal_path_exists(ok, 9, 0));
  }

  TEST_CASE("success rate never decreases during a run") {
    const auto s = builtin_scenario("neuron_pair");
    World w = build_scenario(s, scenario_params(s), 2);
    double prev = 0;
    for (int i = 0; i < 60; ++i) {
      w.run_ms(10000);
      const double now = success_rate(realized_edges(w), intended_topology(s));
      CHECK(now >= prev);
      prev = now;
    }
  }

  TEST_CASE("moving average") {
    const std::vector<double> v{1, 2, 3, 4, 100};
    CHECK(moving_average(v, 1) == v);
    const auto m = moving_average(v, 3);
    CHECK(m[0] == Approx(1.5));
    CHECK(m[2] == Approx(3.0));
    CHECK(m[4] == Approx(52.0));
  }

  TEST_CASE("kinematics trace") {
    std::vector<Record> rs;
    for (int i = 0; i < 4; ++i) {
      Record r;
      r.time_ms = i;
      r.kind = RecordKind::kinematics;
      r.agent_id = 2;
      r.vx = i;
      r.vy = 0;
      r.ax = i % 2 ? 1.0 : -1.0;
      r.ay = 0;
      rs.push_back(r);
    }
    const auto raw = kinematics_trace(rs, 2);
    REQUIRE(raw.size() == 4);
    CHECK(raw[3].vx == 3.0);
    const auto smooth = kinematics_trace(rs, 2, 2);
    CHECK(smooth.size() == 4);
    CHECK_THROWS_AS(kinematics_trace(rs, 5), LookupError);
  }

  TEST_CASE("noiseless agent: disturbances show in a but not in v") {
    auto s = builtin_scenario("delay_line_circular");
    SimParams p = scenario_params(s);
    p.sigma_env_noise = 0;
    WorldOptions opt;
    opt.kinematics_every = 1;
    World w = build_scenario(s, p, 1, opt);
    w.run_ms(30000);
    const auto tr = kinematics_trace(w.records(), 1);
    double max_jump_a = 0, max_jump_v = 0, max_v = 0, max_a = 0;
    for (std::size_t i = 1; i < tr.size(); ++i) {
      max_jump_a = std::max(max_jump_a, std::abs(tr[i].ax - tr[i - 1].ax) + std::abs(tr[i].ay - tr[i - 1].ay));
      max_jump_v = std::max(max_jump_v, std::abs(tr[i].vx - tr[i - 1].vx) + std::abs(tr[i].vy - tr[i - 1].vy));
      max_v = std::max(max_v, std::hypot(tr[i].vx, tr[i].vy));
      max_a = std::max(max_a, std::hypot(tr[i].ax, tr[i].ay));
    }
    REQUIRE(max_v > 0);
    // acceleration jumps by its full size on a pulse; velocity barely moves
    CHECK(max_jump_a >= 0.5 * max_a);
    CHECK(max_jump_v <= 0.5 * max_v);
  }

  TEST_CASE("csv writers") {
    const auto dir = std::filesystem::temp_directory_path();
    const Histogram1D h = histogram_1d(std::vector<double>{1, 2, 3}, 1);
    write_hist1d_csv(dir / "sg_h1.csv", h);
    std::ifstream in(dir / "sg_h1.csv");
    std::string first;
    std::getline(in, first);
    CHECK(first == "bin_lo,bin_hi,count,density");
    const std::vector<std::pair<std::string, double>> stats{{"mean", 2.0}};
    write_stats_csv(dir / "sg_st.csv", stats);
    std::ifstream st(dir / "sg_st.csv");
    std::stringstream ss;
    ss << st.rdbuf();
    CHECK(ss.str() == "stat,value\nmean,2\n");
    CHECK_THROWS_AS(write_hist1d_csv("/nonexistent/dir/x.csv", h), IoError);
  }
}
