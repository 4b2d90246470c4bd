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

#include "intmpc/errors.hpp"
#include "intmpc/reference_path.hpp"
#include "intmpc/rng.hpp"

using namespace intmpc;

namespace {

ReferencePath straight_path(double length = 20.0) {
  std::vector<Vec2> wps;
  for (double x = 0.0; x <= length + 1e-9; x += 2.0) wps.emplace_back(x, 0.0);
  return ReferencePath(wps);
}

ReferencePath quarter_arc(double radius, double spacing) {
  std::vector<Vec2> wps;
  const double total = radius * kPi / 2.0;
  const int n = static_cast<int>(total / spacing);
  for (int i = 0; i <= n; ++i) {
    const double th = (kPi / 2.0) * i / n;
    wps.emplace_back(radius * std::sin(th), radius * (1.0 - std::cos(th)));
  }
  return ReferencePath(wps);
}

}  // namespace

TEST_CASE("build: straight two-point segment") {
  const ReferencePath p({{0, 0}, {10, 0}});
  CHECK(p.total_length() == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(p.point_at(0.0).x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.point_at(10.0).x() == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("build: collinear points interpolate exactly") {
  const ReferencePath p({{0, 0}, {5, 0}, {10, 0}});
  const Vec2 mid = p.point_at(5.0);
  CHECK(std::abs(mid.x() - 5.0) < 1e-6);
  CHECK(std::abs(mid.y()) < 1e-6);
}

TEST_CASE("build: quarter arc stays near the true circle") {
  // Radius-10 circle sampled at 1 m spacing; compare the spline midpoint
  // against the analytic circle.
  const ReferencePath p = quarter_arc(10.0, 1.0);
  const Vec2 mid = p.point_at(p.total_length() / 2.0);
  const double r = (mid - Vec2(0.0, 10.0)).norm();
  CHECK(std::abs(r - 10.0) < 0.05);
}

TEST_CASE("build: degenerate inputs are rejected") {
  CHECK_THROWS_AS(ReferencePath({{1, 1}}), DegeneratePath);
  CHECK_THROWS_AS(ReferencePath({{1, 1}, {1, 1}}), DegeneratePath);
  // Consecutive duplicates are dropped, the rest builds fine.
  const ReferencePath p({{0, 0}, {0, 0}, {5, 0}, {5, 0}, {10, 0}});
  CHECK(p.waypoints().size() == 3);
}

TEST_CASE("build: spline passes through every waypoint") {
  Rng rng(5);
  std::vector<Vec2> wps;
  double x = 0.0, y = 0.0;
  for (int i = 0; i < 12; ++i) {
    wps.emplace_back(x, y);
    x += rng.uniform(1.0, 3.0);
    y += rng.uniform(-1.0, 1.0);
  }
  const ReferencePath p(wps);
  double lam = 0.0;
  for (std::size_t i = 0; i < wps.size(); ++i) {
    if (i > 0) lam += (wps[i] - wps[i - 1]).norm();
    CHECK((p.point_at(lam) - wps[i]).norm() < 1e-9);
  }
}

TEST_CASE("errors_at: straight path examples") {
  const ReferencePath p = straight_path();
  {
    const auto [ec, el] = p.errors_at(3.0, Vec2(3.0, 0.5));
    CHECK(ec == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(el == doctest::Approx(0.0).epsilon(1e-12));
  }
  {
    const auto [ec, el] = p.errors_at(3.0, Vec2(4.0, 0.0));
    CHECK(ec == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(el == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("errors_at: frame-constructed point on a curved path") {
  const ReferencePath p = quarter_arc(10.0, 1.0);
  const double lam = p.total_length() / 2.0;
  const PathFrame f = p.frame_at(lam);
  const auto [ec, el] = p.errors_at(lam, f.point + 0.3 * f.normal);
  CHECK(std::abs(ec - 0.3) < 1e-3);
  CHECK(std::abs(el) < 1e-3);
}

TEST_CASE("errors_at: exact decomposition on a straight path") {
  const ReferencePath p = straight_path();
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const double lam = rng.uniform(1.0, 19.0);
    const double c = rng.uniform(-3, 3);
    const double l = rng.uniform(-3, 3);
    const PathFrame f = p.frame_at(lam);
    const auto [ec, el] = p.errors_at(lam, f.point + c * f.normal + l * f.tangent);
    CHECK(std::abs(ec - c) < 1e-9);
    CHECK(std::abs(el - l) < 1e-9);
  }
}

TEST_CASE("errors_at: invariant under rigid transformation") {
  Rng rng(9);
  std::vector<Vec2> wps;
  double x = 0.0, y = 0.0;
  for (int i = 0; i < 10; ++i) {
    wps.emplace_back(x, y);
    x += rng.uniform(1.5, 3.0);
    y += rng.uniform(-0.8, 0.8);
  }
  const ReferencePath p(wps);
  const double th = 0.83;
  const Vec2 t(12.0, -7.0);
  const Eigen::Rotation2Dd R(th);
  std::vector<Vec2> wps2;
  for (const auto& w : wps) wps2.push_back(R * w + t);
  const ReferencePath p2(wps2);

  for (int i = 0; i < 50; ++i) {
    const double lam = rng.uniform(0.5, p.total_length() - 0.5);
    const Vec2 q(rng.uniform(0, 20), rng.uniform(-3, 3));
    const auto [ec1, el1] = p.errors_at(lam, q);
    const auto [ec2, el2] = p2.errors_at(lam, R * q + t);
    CHECK(ec1 == doctest::Approx(ec2).epsilon(1e-6));
    CHECK(el1 == doctest::Approx(el2).epsilon(1e-6));
  }
}

TEST_CASE("frame tangent is unit length, normal is left of tangent") {
  const ReferencePath p = quarter_arc(10.0, 1.0);
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    const PathFrame f = p.frame_at(rng.uniform(0.0, p.total_length()));
    CHECK(std::abs(f.tangent.norm() - 1.0) < 1e-9);
    // +90 degree rotation
    CHECK(f.normal.x() == doctest::Approx(-f.tangent.y()).epsilon(1e-12));
    CHECK(f.normal.y() == doctest::Approx(f.tangent.x()).epsilon(1e-12));
  }
}

TEST_CASE("frame derivatives match finite differences") {
  const ReferencePath p = quarter_arc(10.0, 1.0);
  const double h = 1e-6;
  for (double lam : {2.0, 5.0, 9.0, 12.0}) {
    const PathFrameDerivs fd = p.frame_derivs_at(lam);
    const PathFrame fp = p.frame_at(lam + h);
    const PathFrame fm = p.frame_at(lam - h);
    CHECK((fd.dpoint - (fp.point - fm.point) / (2 * h)).norm() < 1e-5);
    CHECK((fd.dtangent - (fp.tangent - fm.tangent) / (2 * h)).norm() < 1e-5);
    CHECK((fd.dnormal - (fp.normal - fm.normal) / (2 * h)).norm() < 1e-5);
  }
}

TEST_CASE("progress_update examples") {
  CHECK(progress_update(0.0, 2.0, 0.1, 100.0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(progress_update(100.0, 3.0, 0.1, 100.0) == 100.0);
  CHECK(progress_update(1.0, 0.0, 0.1, 100.0) == 1.0);
}

TEST_CASE("project recovers progress near a guess") {
  const ReferencePath p = quarter_arc(10.0, 0.5);
  Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    const double lam = rng.uniform(1.0, p.total_length() - 1.0);
    const PathFrame f = p.frame_at(lam);
    const Vec2 q = f.point + rng.uniform(-1.0, 1.0) * f.normal;
    const double found = p.project(q, lam + rng.uniform(-2.0, 2.0));
    CHECK(std::abs(found - lam) < 1e-5);
  }
}
