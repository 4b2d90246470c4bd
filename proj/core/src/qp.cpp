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

#include "intmpc/qp.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace intmpc {

QpResult solve_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                  const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& x0, int max_iterations) {
  const int n = static_cast<int>(Q.rows());
  const int m = static_cast<int>(A.rows());
  constexpr double kStepTol = 1e-11;
  constexpr double kMultTol = 1e-9;
  constexpr double kDirTol = 1e-12;

  QpResult res;
  res.x = x0;
  res.multipliers = Eigen::VectorXd::Zero(m);

  Eigen::LLT<Eigen::MatrixXd> qf(Q);
  if (qf.info() != Eigen::Success) {
    // Fall back to a slightly regularized factorization.
    Eigen::MatrixXd Qr = Q;
    Qr.diagonal().array() += 1e-10 * (1.0 + Q.trace() / n);
    qf.compute(Qr);
    if (qf.info() != Eigen::Success) return res;
  }

  std::vector<int> working;
  std::vector<char> in_working(static_cast<std::size_t>(m), 0);
  Eigen::VectorXd lambda;

  for (int iter = 0; iter < max_iterations; ++iter) {
    res.iterations = iter + 1;
    const Eigen::VectorXd g = Q * res.x + c;

    Eigen::VectorXd p;
    const int w = static_cast<int>(working.size());
    if (w == 0) {
      p = -qf.solve(g);
      lambda.resize(0);
    } else {
      Eigen::MatrixXd Aw(w, n);
      for (int i = 0; i < w; ++i) Aw.row(i) = A.row(working[static_cast<std::size_t>(i)]);
      const Eigen::MatrixXd QiAwT = qf.solve(Aw.transpose());
      Eigen::MatrixXd K = Aw * QiAwT;
      K.diagonal().array() += 1e-12 * (1.0 + K.trace() / w);
      const Eigen::VectorXd rhs = Aw * qf.solve(g);
      lambda = K.ldlt().solve(rhs);
      p = qf.solve(Aw.transpose() * lambda - g);
    }

    if (p.lpNorm<Eigen::Infinity>() < kStepTol) {
      int drop = -1;
      double most_negative = -kMultTol;
      for (int i = 0; i < w; ++i) {
        if (lambda(i) < most_negative) {
          most_negative = lambda(i);
          drop = i;
        }
      }
      if (drop < 0) {
        for (int i = 0; i < w; ++i) {
          res.multipliers(working[static_cast<std::size_t>(i)]) = std::max(0.0, lambda(i));
        }
        res.solved = true;
        return res;
      }
      in_working[static_cast<std::size_t>(working[static_cast<std::size_t>(drop)])] = 0;
      working.erase(working.begin() + drop);
      continue;
    }

    // Largest feasible step toward x + p.
    double alpha = 1.0;
    int blocking = -1;
    for (int i = 0; i < m; ++i) {
      if (in_working[static_cast<std::size_t>(i)]) continue;
      const double d = A.row(i).dot(p);
      if (d >= -kDirTol) continue;
      const double slack = A.row(i).dot(res.x) - b(i);
      const double ai = std::max(0.0, slack) / (-d);
      if (ai < alpha) {
        alpha = ai;
        blocking = i;
      }
    }
    res.x += alpha * p;
    if (blocking >= 0) {
      working.push_back(blocking);
      in_working[static_cast<std::size_t>(blocking)] = 1;
    }
  }
  // Iteration cap hit; return the current (feasible) iterate unconverged.
  return res;
}

}  // namespace intmpc
