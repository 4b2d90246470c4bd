// Copyright 2026 The IntMPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "intmpc/dynamics.hpp"
#include "intmpc/rng.hpp"

using namespace intmpc;

namespace {

const VehicleLimits kLimits{};  // a in [-5, 3], delta_max 0.5, v_max 8, l 1.25

// Forward-Euler reference integrator at a fine step.
VehicleState euler_reference(VehicleState s, const ControlInput& u, double t_end,
                             double h, const VehicleLimits& limits) {
  const int n = static_cast<int>(std::round(t_end / h));
  for (int i = 0; i < n; ++i) {
    const StateDerivative d = derivative(s, u, limits);
    s.x += h * d.dx;
    s.y += h * d.dy;
    s.psi += h * d.dpsi;
    s.v = std::clamp(s.v + h * d.dv, 0.0, limits.v_max);
  }
  s.psi = wrap_angle(s.psi);
  return s;
}

VehicleState rk4_compound(VehicleState s, const ControlInput& u, double t_end,
                          double h, const VehicleLimits& limits) {
  const int n = static_cast<int>(std::round(t_end / h));
  for (int i = 0; i < n; ++i) s = step(s, u, h, limits);
  return s;
}

double endpoint_error(const VehicleState& a, const VehicleState& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.psi - b.psi) +
         std::abs(a.v - b.v);
}

}  // namespace

TEST_CASE("derivative: straight-line motion") {
  const StateDerivative d = derivative({0, 0, 0, 2}, {0, 0}, kLimits);
  CHECK(d.dx == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d.dy == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(d.dpsi == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(d.dv == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("derivative: turning rate vanishes at zero speed") {
  const StateDerivative d = derivative({0, 0, 0, 0}, {1, 0.3}, kLimits);
  CHECK(d.dx == 0.0);
  CHECK(d.dy == 0.0);
  CHECK(d.dpsi == 0.0);
  CHECK(d.dv == 1.0);
}

TEST_CASE("derivative: frozen slip-angle oracle") {
  // Independent evaluation of the model equations at
  // v = 3, delta = 0.2, l_r = l_f = 1.25.
  const StateDerivative d = derivative({0, 0, 0, 3}, {0, 0.2}, kLimits);
  CHECK(d.dx == doctest::Approx(2.984708455905372).epsilon(1e-12));
  CHECK(d.dy == doctest::Approx(0.30251517853980647).epsilon(1e-12));
  CHECK(d.dpsi == doctest::Approx(0.24201214283184519).epsilon(1e-12));
}

TEST_CASE("step: constant velocity") {
  const VehicleState s = step({0, 0, 0, 2}, {0, 0}, 0.1, kLimits);
  CHECK(s.x == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(s.y == 0.0);
  CHECK(s.psi == 0.0);
  CHECK(s.v == 2.0);
}

TEST_CASE("step: braking at rest does not reverse") {
  const VehicleState s = step({0, 0, 0, 0}, {-1, 0}, 0.1, kLimits);
  CHECK(s.v == 0.0);
  CHECK(s.x == 0.0);
  CHECK(s.y == 0.0);
}

TEST_CASE("step: matches fine-step Euler oracle") {
  const VehicleState got = step({0, 0, 0, 3}, {1, 0.1}, 0.1, kLimits);
  const VehicleState ref = euler_reference({0, 0, 0, 3}, {1, 0.1}, 0.1, 1e-5, kLimits);
  CHECK(std::abs(got.x - ref.x) < 1e-4);
  CHECK(std::abs(got.y - ref.y) < 1e-4);
}

TEST_CASE("step: heading invariant for zero steering") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const VehicleState s{rng.uniform(-5, 5), rng.uniform(-5, 5),
                         rng.uniform(-3, 3), rng.uniform(0, 7)};
    const double psi0 = s.psi;
    const VehicleState out = step(s, {rng.uniform(-5, 3), 0.0},
                                  rng.uniform(0.01, 0.3), kLimits);
    CHECK(out.psi == doctest::Approx(psi0).epsilon(1e-13));
  }
}

TEST_CASE("step: fourth-order convergence against a fine reference") {
  const VehicleState s0{0, 0, 0.3, 3};
  const ControlInput u{0.5, 0.2};
  const double T = 0.2;
  const VehicleState ref = rk4_compound(s0, u, T, 1e-5, kLimits);
  const double e_full = endpoint_error(rk4_compound(s0, u, T, 0.1, kLimits), ref);
  const double e_half = endpoint_error(rk4_compound(s0, u, T, 0.05, kLimits), ref);
  CHECK(e_full / e_half >= 8.0);
}

TEST_CASE("step: speed stays clamped to [0, v_max]") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const VehicleState s{0, 0, rng.uniform(-3, 3), rng.uniform(0, 8)};
    const ControlInput u{rng.uniform(-5, 3), rng.uniform(-0.5, 0.5)};
    const VehicleState out = step(s, u, rng.uniform(0.01, 1.0), kLimits);
    CHECK(out.v >= 0.0);
    CHECK(out.v <= kLimits.v_max);
  }
}

TEST_CASE("step: translation commutes") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const VehicleState s{rng.uniform(-5, 5), rng.uniform(-5, 5),
                         rng.uniform(-3, 3), rng.uniform(0.5, 7)};
    const ControlInput u{rng.uniform(-4, 2.5), rng.uniform(-0.4, 0.4)};
    const double ox = rng.uniform(-100, 100);
    const double oy = rng.uniform(-100, 100);
    const VehicleState a = step({s.x + ox, s.y + oy, s.psi, s.v}, u, 0.1, kLimits);
    const VehicleState b = step(s, u, 0.1, kLimits);
    CHECK(a.x - ox == doctest::Approx(b.x).epsilon(1e-12));
    CHECK(a.y - oy == doctest::Approx(b.y).epsilon(1e-12));
    CHECK(a.psi == doctest::Approx(b.psi).epsilon(1e-12));
    CHECK(a.v == doctest::Approx(b.v).epsilon(1e-12));
  }
}

TEST_CASE("step_jacobians: match central finite differences") {
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const VehicleState s{rng.uniform(-5, 5), rng.uniform(-5, 5),
                         rng.uniform(-2, 2), rng.uniform(0.5, 7)};
    const ControlInput u{rng.uniform(-4, 2.5), rng.uniform(-0.4, 0.4)};
    const double dt = 0.1;
    const StepJacobians J = step_jacobians(s, u, dt, kLimits);

    const double h = 1e-6;
    auto pack = [](const VehicleState& st) {
      return Eigen::Vector4d(st.x, st.y, st.psi, st.v);
    };
    for (int j = 0; j < 4; ++j) {
      VehicleState sp = s, sm = s;
      double* fp[] = {&sp.x, &sp.y, &sp.psi, &sp.v};
      double* fm[] = {&sm.x, &sm.y, &sm.psi, &sm.v};
      *fp[j] += h;
      *fm[j] -= h;
      const Eigen::Vector4d fd =
          (pack(step(sp, u, dt, kLimits)) - pack(step(sm, u, dt, kLimits))) / (2 * h);
      for (int i = 0; i < 4; ++i) {
        CHECK(J.d_state(i, j) == doctest::Approx(fd(i)).epsilon(1e-5));
      }
    }
    for (int j = 0; j < 2; ++j) {
      ControlInput up = u, um = u;
      (j == 0 ? up.a : up.delta) += h;
      (j == 0 ? um.a : um.delta) -= h;
      const Eigen::Vector4d fd =
          (pack(step(s, up, dt, kLimits)) - pack(step(s, um, dt, kLimits))) / (2 * h);
      for (int i = 0; i < 4; ++i) {
        CHECK(J.d_control(i, j) == doctest::Approx(fd(i)).epsilon(1e-5));
      }
    }
  }
}
