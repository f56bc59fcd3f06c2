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
#include <vector>

#include "spinegrow/errors.hpp"
#include "spinegrow/growth.hpp"

using namespace spinegrow;
using doctest::Approx;

TEST_SUITE("growth") {
  TEST_CASE("stdp kernel values") {
    CHECK(stdp_kernel(10, 1, 10) == Approx(0.3678794411714).epsilon(1e-12));
    CHECK(stdp_kernel(-10, 1, 10) == Approx(-0.3678794411714).epsilon(1e-12));
    CHECK(stdp_kernel(20, 1, 10) == Approx(0.1353352832366).epsilon(1e-12));
    CHECK(stdp_kernel(0, 2.5, 10) == 2.5);
  }

  TEST_CASE("stdp kernel shape over the plotted window") {
    double prev = 0;
    for (double dt = 0.5; dt <= 50; dt += 0.5) {
      const double k = stdp_kernel(dt, 1, 10);
      CHECK(k > 0);
      CHECK(k <= 1);
      if (prev > 0) CHECK(k < prev);
      prev = k;
    }
  }

  TEST_CASE("window attenuation") {
    SimParams p;
    CHECK(window_attenuation(20, p) == 1.0);
    CHECK(window_attenuation(150, p) == 0.01);
    CHECK(window_attenuation(-150, p) == 0.01);
    CHECK(window_attenuation(100, p) == 1.0);
    CHECK(window_attenuation(-100, p) == 1.0);
  }

  TEST_CASE("attraction force") {
    const Vec2 a = attraction_force(1, {0, 0}, {1, 0}, 1);
    CHECK(a.x == Approx(1.0));
    CHECK(a.y == 0.0);
    const Vec2 b = attraction_force(1, {0, 0}, {0, -2}, 1);
    CHECK(b.norm() == Approx(0.25));
    CHECK(b.y < 0);
    CHECK(attraction_force(-0.5, {0, 0}, {3, 4}, 1) == Vec2{});
    CHECK(attraction_force(2, {0, 0}, {3, 4}, 3).norm() == Approx(6.0 / 25.0));
    CHECK_THROWS_AS(attraction_force(1, {2, 2}, {2, 2}, 1), GeometryError);
  }

  TEST_CASE("environment noise") {
    RandomStream rng(1), untouched(1);
    CHECK(sample_env_noise(0, rng) == Vec2{});
    CHECK(rng.next() == untouched.next());

    RandomStream r(2);
    const int n = 100000;
    double sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) {
      const Vec2 v = sample_env_noise(1.0, r);
      sx += v.x;
      sy += v.y;
    }
    // each component has variance sigma^2 / 2
    const double bound = 3 * std::sqrt(0.5) / std::sqrt(n);
    CHECK(std::abs(sx / n) <= bound);
    CHECK(std::abs(sy / n) <= bound);
  }

  TEST_CASE("drag") {
    const Vec2 d = drag({0.125, 0}, 0.8);
    CHECK(d.x == Approx(-0.0125));
    CHECK(drag({}, 0.8) == Vec2{});
    const Vec2 u = drag({0.6, 0.8}, 0.8);
    CHECK(u.norm() == Approx(0.8));
    CHECK(dot(u, Vec2{0.6, 0.8}) < 0);
  }

  TEST_CASE("limited drag never exceeds what stops the cone") {
    const Vec2 v{10, 0};
    const Vec2 f = limited_drag(v, 0.8, 1, 1);
    CHECK(f.x == Approx(-10.0));
    CHECK(limited_drag({0.1, 0}, 0.8, 1, 1) == drag({0.1, 0}, 0.8));
  }

  TEST_CASE("total force") {
    CHECK(total_force({}, {}, {}) == Vec2{});
    const std::vector<Vec2> one{{1, 0}};
    const Vec2 t = total_force(one, {0, 1}, {-0.5, 0});
    CHECK(t.x == 0.5);
    CHECK(t.y == 1.0);
    const std::vector<Vec2> opposite{{0.3, -0.2}, {-0.3, 0.2}};
    const Vec2 left = total_force(opposite, {0.01, 0.02}, {-0.001, 0});
    CHECK(left.x == Approx(0.009).epsilon(1e-12));
    CHECK(left.y == Approx(0.02).epsilon(1e-12));
  }

  TEST_CASE("uniform motion") {
    SimParams p;
    ConeState c;
    c.velocity = {1, 0};
    const ConeState n = integrate_step(c, {}, p);
    CHECK(n.position == Vec2{1, 0});
    CHECK(n.velocity == Vec2{1, 0});
    CHECK(n.distance_since_segment == 1.0);
  }

  TEST_CASE("position uses the stale velocity") {
    SimParams p;
    ConeState c;
    c.acceleration = {2, 0};
    const ConeState a = integrate_step(c, {5, 0}, p);
    CHECK(a.position == Vec2{0, 0});
    CHECK(a.velocity == Vec2{2, 0});
    CHECK(a.acceleration == Vec2{5, 0});
  }

  TEST_CASE("non-finite input is rejected") {
    SimParams p;
    ConeState c;
    CHECK_THROWS_AS(integrate_step(c, {std::nan(""), 0}, p), NumericError);
    CHECK_THROWS_AS(integrate_step(c, {INFINITY, 0}, p), NumericError);
  }

  TEST_CASE("terminal velocity under drag") {
    SimParams p;
    ConeState c;
    for (int i = 0; i < 5000; ++i) c = advance_cone(c, {0.0125, 0}, p);
    CHECK(c.velocity.norm() == Approx(0.125).epsilon(0.01));
  }

  TEST_CASE("without drag speed keeps growing") {
    SimParams p;
    p.drag_coeff = 0;
    ConeState c;
    double prev = -1;
    for (int i = 0; i < 10000; ++i) {
      c = advance_cone(c, {0.0125, 0}, p);
      REQUIRE(c.velocity.norm() >= prev);
      prev = c.velocity.norm();
    }
    CHECK(prev > 100);
  }

  TEST_CASE("drag only decelerates") {
    SimParams p;
    ConeState c;
    c.velocity = {3, -4};
    double prev = c.velocity.norm();
    for (int i = 0; i < 1000; ++i) {
      c = advance_cone(c, {}, p);
      REQUIRE(c.velocity.norm() <= prev);
      prev = c.velocity.norm();
    }
  }
}
