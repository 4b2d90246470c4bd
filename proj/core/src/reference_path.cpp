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

#include "intmpc/reference_path.hpp"

#include <algorithm>
#include <cmath>

#include "intmpc/errors.hpp"

namespace intmpc {

CubicSpline1d::CubicSpline1d(std::vector<double> params, std::vector<double> values)
    : t_(std::move(params)), y_(std::move(values)) {
  const int n = static_cast<int>(t_.size());
  m_.assign(n, 0.0);
  if (n < 3) return;  // two knots: linear segment, second derivatives stay 0

  // Tridiagonal system for natural spline second derivatives.
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  b[0] = 1.0;
  b[n - 1] = 1.0;
  for (int i = 1; i < n - 1; ++i) {
    const double h0 = t_[i] - t_[i - 1];
    const double h1 = t_[i + 1] - t_[i];
    a[i] = h0 / 6.0;
    b[i] = (h0 + h1) / 3.0;
    c[i] = h1 / 6.0;
    d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
  }
  // Thomas algorithm.
  for (int i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  m_[n - 1] = d[n - 1] / b[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
  }
}

int CubicSpline1d::segment(double t) const {
  const int n = static_cast<int>(t_.size());
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  int i = static_cast<int>(it - t_.begin()) - 1;
  return std::clamp(i, 0, n - 2);
}

double CubicSpline1d::eval(double t) const {
  const int i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double A = (t_[i + 1] - t) / h;
  const double B = (t - t_[i]) / h;
  return A * y_[i] + B * y_[i + 1] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline1d::deriv(double t) const {
  const int i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double A = (t_[i + 1] - t) / h;
  const double B = (t - t_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((3 * B * B - 1) * m_[i + 1] - (3 * A * A - 1) * m_[i]) * h / 6.0;
}

double CubicSpline1d::deriv2(double t) const {
  const int i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double A = (t_[i + 1] - t) / h;
  const double B = (t - t_[i]) / h;
  return A * m_[i] + B * m_[i + 1];
}

ReferencePath::ReferencePath(const std::vector<Vec2>& waypoints) {
  for (const auto& p : waypoints) {
    if (waypoints_.empty() || (p - waypoints_.back()).norm() > 1e-9) {
      waypoints_.push_back(p);
    }
  }
  if (waypoints_.size() < 2) {
    throw DegeneratePath("reference path needs at least two distinct waypoints");
  }

  std::vector<double> lam(waypoints_.size(), 0.0);
  std::vector<double> xs(waypoints_.size()), ys(waypoints_.size());
  xs[0] = waypoints_[0].x();
  ys[0] = waypoints_[0].y();
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    lam[i] = lam[i - 1] + (waypoints_[i] - waypoints_[i - 1]).norm();
    xs[i] = waypoints_[i].x();
    ys[i] = waypoints_[i].y();
  }
  total_length_ = lam.back();
  sx_ = CubicSpline1d(lam, std::move(xs));
  sy_ = CubicSpline1d(std::move(lam), std::move(ys));
}

Vec2 ReferencePath::point_at(double lambda) const {
  lambda = std::clamp(lambda, 0.0, total_length_);
  return Vec2(sx_.eval(lambda), sy_.eval(lambda));
}

PathFrame ReferencePath::frame_at(double lambda) const {
  lambda = std::clamp(lambda, 0.0, total_length_);
  PathFrame f;
  f.point = Vec2(sx_.eval(lambda), sy_.eval(lambda));
  Vec2 d(sx_.deriv(lambda), sy_.deriv(lambda));
  f.tangent = d.normalized();
  f.normal = Vec2(-f.tangent.y(), f.tangent.x());
  return f;
}

PathFrameDerivs ReferencePath::frame_derivs_at(double lambda) const {
  lambda = std::clamp(lambda, 0.0, total_length_);
  PathFrameDerivs out;
  const Vec2 d(sx_.deriv(lambda), sy_.deriv(lambda));
  const Vec2 dd(sx_.deriv2(lambda), sy_.deriv2(lambda));
  const double speed = d.norm();
  const Vec2 t = d / speed;
  out.frame.point = Vec2(sx_.eval(lambda), sy_.eval(lambda));
  out.frame.tangent = t;
  out.frame.normal = Vec2(-t.y(), t.x());
  out.dpoint = d;
  out.dtangent = (dd - t * t.dot(dd)) / speed;
  out.dnormal = Vec2(-out.dtangent.y(), out.dtangent.x());
  return out;
}

std::pair<double, double> ReferencePath::errors_at(double lambda, const Vec2& pos) const {
  const PathFrame f = frame_at(lambda);
  const Vec2 r = pos - f.point;
  return {f.normal.dot(r), f.tangent.dot(r)};
}

double ReferencePath::project(const Vec2& pos, double lambda_guess, double window) const {
  const double lo = std::max(0.0, lambda_guess - window);
  const double hi = std::min(total_length_, lambda_guess + window);

  // Coarse scan, then Newton on the lag error.
  double best = lo;
  double best_abs = std::abs(errors_at(lo, pos).second);
  for (double l = lo; l <= hi; l += 0.5) {
    const double e = std::abs(errors_at(l, pos).second);
    if (e < best_abs) {
      best_abs = e;
      best = l;
    }
  }
  double lambda = best;
  for (int it = 0; it < 8; ++it) {
    const PathFrameDerivs fd = frame_derivs_at(lambda);
    const Vec2 r = pos - fd.frame.point;
    const double g = fd.frame.tangent.dot(r);
    const double dg = fd.dtangent.dot(r) - fd.frame.tangent.dot(fd.dpoint);
    if (std::abs(dg) < 1e-12) break;
    lambda = std::clamp(lambda - g / dg, lo, hi);
    if (std::abs(g) < 1e-10) break;
  }
  return lambda;
}

double ReferencePath::project_global(const Vec2& pos) const {
  double best = 0.0;
  double best_d = (pos - point_at(0.0)).squaredNorm();
  for (double l = 0.0; l <= total_length_; l += 1.0) {
    const double d = (pos - point_at(l)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = l;
    }
  }
  return project(pos, best, 2.0);
}

double progress_update(double lambda, double v, double dt, double total_length) {
  return std::clamp(lambda + v * dt, 0.0, total_length);
}

}  // namespace intmpc
