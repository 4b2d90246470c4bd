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

#pragma once

#include <utility>
#include <vector>

#include "intmpc/types.hpp"

namespace intmpc {

// Local frame of the reference path at a given progress value.
struct PathFrame {
  Vec2 point;    // path point
  Vec2 tangent;  // unit tangent
  Vec2 normal;   // unit normal, tangent rotated +90 deg (left of path)
};

// Frame plus its derivatives in the progress parameter, used by the
// planner's constraint/cost linearization.
struct PathFrameDerivs {
  PathFrame frame;
  Vec2 dpoint;    // dP/dlambda (not unit length in general)
  Vec2 dtangent;  // d(unit tangent)/dlambda
  Vec2 dnormal;   // d(unit normal)/dlambda
};

// Natural cubic spline through (parameter, value) knots.
class CubicSpline1d {
 public:
  CubicSpline1d() = default;
  CubicSpline1d(std::vector<double> params, std::vector<double> values);

  double eval(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;

 private:
  int segment(double t) const;

  std::vector<double> t_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at knots
};

// Planar path through an ordered waypoint list, parameterized by cumulative
// chord length. Immutable after construction; all queries are const.
class ReferencePath {
 public:
  // Throws DegeneratePath if fewer than two distinct waypoints remain after
  // dropping consecutive duplicates.
  explicit ReferencePath(const std::vector<Vec2>& waypoints);

  double total_length() const { return total_length_; }
  const std::vector<Vec2>& waypoints() const { return waypoints_; }

  Vec2 point_at(double lambda) const;
  PathFrame frame_at(double lambda) const;
  PathFrameDerivs frame_derivs_at(double lambda) const;

  // Signed contour (lateral, positive left) and lag (longitudinal) error of
  // `pos` relative to the frame at `lambda`.
  std::pair<double, double> errors_at(double lambda, const Vec2& pos) const;

  // Progress value within a window around `lambda_guess` whose frame is
  // longitudinally aligned with `pos` (lag error driven to zero).
  double project(const Vec2& pos, double lambda_guess, double window = 8.0) const;

  // Global projection by coarse scan plus refinement.
  double project_global(const Vec2& pos) const;

 private:
  std::vector<Vec2> waypoints_;
  CubicSpline1d sx_;
  CubicSpline1d sy_;
  double total_length_ = 0.0;
};

// lambda + v*dt clamped to [0, total_length].
double progress_update(double lambda, double v, double dt, double total_length);

}  // namespace intmpc
