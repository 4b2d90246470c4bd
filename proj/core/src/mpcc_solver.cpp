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

#include "intmpc/mpcc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intmpc/dynamics.hpp"
#include "intmpc/qp.hpp"

namespace intmpc {

namespace {

std::vector<ControlInput> clamp_to_box(std::vector<ControlInput> u,
                                       const VehicleLimits& limits) {
  for (auto& c : u) {
    c.a = std::clamp(c.a, limits.a_lo, limits.a_hi);
    c.delta = std::clamp(c.delta, -limits.delta_max, limits.delta_max);
  }
  return u;
}

// States, progress and cost only; used by the merit line search.
struct Values {
  std::vector<VehicleState> states;
  std::vector<double> lambdas;
  double cost = 0.0;
};

Values roll_values(const MpccProblem& p, const std::vector<ControlInput>& u) {
  const int H = p.horizon;
  Values v;
  v.states.resize(static_cast<std::size_t>(H) + 1);
  v.lambdas.resize(static_cast<std::size_t>(H) + 1);
  v.states[0] = p.initial_state;
  v.lambdas[0] = p.initial_lambda;
  for (int k = 0; k < H; ++k) {
    v.cost += stage_cost(v.states[static_cast<std::size_t>(k)],
                         u[static_cast<std::size_t>(k)],
                         v.lambdas[static_cast<std::size_t>(k)], p.v_ref, p.weights,
                         *p.path);
    v.states[static_cast<std::size_t>(k) + 1] =
        step(v.states[static_cast<std::size_t>(k)], u[static_cast<std::size_t>(k)],
             p.dt, p.limits);
    v.lambdas[static_cast<std::size_t>(k) + 1] =
        progress_update(v.lambdas[static_cast<std::size_t>(k)],
                        v.states[static_cast<std::size_t>(k)].v, p.dt,
                        p.path->total_length());
  }
  v.cost += terminal_cost(v.states[static_cast<std::size_t>(H)],
                          v.lambdas[static_cast<std::size_t>(H)], p.v_ref, p.weights,
                          *p.path);
  return v;
}

// Soft constraint values over all stages k = 1..H, in a fixed order:
// road lower, road upper, then ellipse margins by (stage, obstacle, disc).
void soft_values(const MpccProblem& p, const Values& v, std::vector<double>* out) {
  const int H = p.horizon;
  out->clear();
  for (int k = 1; k <= H; ++k) {
    const auto [e_c, e_l] =
        p.path->errors_at(v.lambdas[static_cast<std::size_t>(k)],
                          v.states[static_cast<std::size_t>(k)].position());
    (void)e_l;
    out->push_back(e_c + p.w_left);
    out->push_back(p.w_right - e_c);
  }
  for (int k = 1; k <= H; ++k) {
    for (const auto& obs : p.obstacles) {
      for (double off : p.discs.offsets) {
        const Vec2 d = disc_center(v.states[static_cast<std::size_t>(k)], off);
        out->push_back(collision_margin(d, obs, k) - 1.0);
      }
    }
  }
}

double l1_violation(const std::vector<double>& g) {
  double s = 0.0;
  for (double gi : g) s += std::max(0.0, -gi);
  return s;
}

double max_violation(const std::vector<double>& g) {
  double m = 0.0;
  for (double gi : g) m = std::max(m, -gi);
  return m;
}

}  // namespace

ShootingRollout shoot(const MpccProblem& p, const std::vector<ControlInput>& u,
                      bool with_sensitivities) {
  const int H = p.horizon;
  const int nu = 2 * H;
  ShootingRollout r;
  r.states.resize(static_cast<std::size_t>(H) + 1);
  r.lambdas.resize(static_cast<std::size_t>(H) + 1);
  r.states[0] = p.initial_state;
  r.lambdas[0] = p.initial_lambda;
  if (with_sensitivities) {
    r.state_sens.assign(static_cast<std::size_t>(H) + 1, Eigen::MatrixXd::Zero(4, nu));
    r.lambda_sens.assign(static_cast<std::size_t>(H) + 1,
                         Eigen::RowVectorXd::Zero(nu));
  }
  for (int k = 0; k < H; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const VehicleState& sk = r.states[ks];
    const ControlInput& uk = u[ks];

    const double lam_next_raw = r.lambdas[ks] + sk.v * p.dt;
    const bool lam_clamped =
        lam_next_raw < 0.0 || lam_next_raw > p.path->total_length();
    r.lambdas[ks + 1] = std::clamp(lam_next_raw, 0.0, p.path->total_length());

    VehicleState next = step(sk, uk, p.dt, p.limits);
    if (with_sensitivities) {
      StepJacobians J = step_jacobians(sk, uk, p.dt, p.limits);
      // The final speed clamp pins v; its row stops responding.
      if (next.v <= 0.0 || next.v >= p.limits.v_max) {
        J.d_state.row(3).setZero();
        J.d_control.row(3).setZero();
      }
      r.state_sens[ks + 1] = J.d_state * r.state_sens[ks];
      r.state_sens[ks + 1].col(2 * k) += J.d_control.col(0);
      r.state_sens[ks + 1].col(2 * k + 1) += J.d_control.col(1);
      if (lam_clamped) {
        r.lambda_sens[ks + 1].setZero();
      } else {
        r.lambda_sens[ks + 1] = r.lambda_sens[ks] + p.dt * r.state_sens[ks].row(3);
      }
    }
    r.states[ks + 1] = next;
  }
  return r;
}

MpccSolution MpccSolver::solve(const MpccProblem& prob,
                               const std::vector<ControlInput>* initial_controls) {
  const int H = prob.horizon;
  const int nu = 2 * H;
  const double weight_scale =
      std::max({prob.weights.q_c, prob.weights.q_l, prob.weights.q_v,
                prob.weights.q_u, prob.weights.q_delta, 1e-3});

  std::vector<ControlInput> u(static_cast<std::size_t>(H), ControlInput{});
  if (initial_controls != nullptr && initial_controls->size() == u.size()) {
    u = clamp_to_box(*initial_controls, prob.limits);
  }

  double penalty = settings_.penalty_initial * weight_scale;
  MpccSolution sol;
  sol.status = SolveStatus::kInfeasible;

  std::vector<double> g_all;
  std::vector<double> g_trial;
  double kkt = std::numeric_limits<double>::infinity();

  int iter = 0;
  for (; iter < settings_.max_iterations; ++iter) {
    const ShootingRollout roll = shoot(prob, u, true);

    // Gauss-Newton residual Jacobian of the stage costs.
    const int n_res = 3 * (H + 1) + 2 * H;
    Eigen::MatrixXd Jr = Eigen::MatrixXd::Zero(n_res, nu);
    Eigen::VectorXd rr = Eigen::VectorXd::Zero(n_res);
    // Road/ellipse rows are screened: only near-active ones enter the QP.
    std::vector<double> soft_g;
    std::vector<Eigen::RowVectorXd> soft_rows;
    std::vector<double> g_linearized;  // all soft values at the iterate
    g_linearized.reserve(g_all.size());

    const double sqc = std::sqrt(prob.weights.q_c);
    const double sql = std::sqrt(prob.weights.q_l);
    const double sqv = std::sqrt(prob.weights.q_v);
    const double squ = std::sqrt(prob.weights.q_u);
    const double sqd = std::sqrt(prob.weights.q_delta);

    int row = 0;
    std::vector<Eigen::RowVectorXd> ec_rows(static_cast<std::size_t>(H) + 1);
    std::vector<double> ec_vals(static_cast<std::size_t>(H) + 1);
    for (int k = 0; k <= H; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const VehicleState& sk = roll.states[ks];
      const double lam = roll.lambdas[ks];
      const PathFrameDerivs fd = prob.path->frame_derivs_at(lam);
      const Vec2 rel = sk.position() - fd.frame.point;
      const double e_c = fd.frame.normal.dot(rel);
      const double e_l = fd.frame.tangent.dot(rel);
      const double dec_dlam = fd.dnormal.dot(rel);
      const double del_dlam = fd.dtangent.dot(rel) - fd.dpoint.norm();

      Eigen::RowVectorXd dec = fd.frame.normal.x() * roll.state_sens[ks].row(0) +
                               fd.frame.normal.y() * roll.state_sens[ks].row(1) +
                               dec_dlam * roll.lambda_sens[ks];
      Eigen::RowVectorXd del = fd.frame.tangent.x() * roll.state_sens[ks].row(0) +
                               fd.frame.tangent.y() * roll.state_sens[ks].row(1) +
                               del_dlam * roll.lambda_sens[ks];
      ec_rows[ks] = dec;
      ec_vals[ks] = e_c;

      rr(row) = sqc * e_c;
      Jr.row(row++) = sqc * dec;
      rr(row) = sql * e_l;
      Jr.row(row++) = sql * del;
      rr(row) = sqv * (prob.v_ref - sk.v);
      Jr.row(row++) = -sqv * roll.state_sens[ks].row(3);
      if (k < H) {
        rr(row) = squ * u[ks].a;
        Jr(row++, 2 * k) = squ;
        rr(row) = sqd * u[ks].delta;
        Jr(row++, 2 * k + 1) = sqd;
      }
    }

    // Soft constraints in the fixed ordering of soft_values().
    for (int k = 1; k <= H; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const double lo = ec_vals[ks] + prob.w_left;
      const double hi = prob.w_right - ec_vals[ks];
      g_linearized.push_back(lo);
      if (lo < settings_.road_screen_band) {
        soft_g.push_back(lo);
        soft_rows.push_back(ec_rows[ks]);
      }
      g_linearized.push_back(hi);
      if (hi < settings_.road_screen_band) {
        soft_g.push_back(hi);
        soft_rows.push_back(-ec_rows[ks]);
      }
    }
    for (int k = 1; k <= H; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const VehicleState& sk = roll.states[ks];
      for (const auto& obs : prob.obstacles) {
        const double cphi = std::cos(obs.phi);
        const double sphi = std::sin(obs.phi);
        for (double off : prob.discs.offsets) {
          const Vec2 dc = disc_center(sk, off);
          const Vec2 d = dc - obs.centers[ks];
          const double lx = cphi * d.x() + sphi * d.y();
          const double ly = -sphi * d.x() + cphi * d.y();
          const double m = (lx / obs.alpha) * (lx / obs.alpha) +
                           (ly / obs.beta) * (ly / obs.beta);
          g_linearized.push_back(m - 1.0);
          if (m - 1.0 >= settings_.margin_screen_band) continue;
          const double glx = 2.0 * lx / (obs.alpha * obs.alpha);
          const double gly = 2.0 * ly / (obs.beta * obs.beta);
          const double gx = cphi * glx - sphi * gly;
          const double gy = sphi * glx + cphi * gly;
          Eigen::RowVectorXd r_row =
              gx * (roll.state_sens[ks].row(0) -
                    off * std::sin(sk.psi) * roll.state_sens[ks].row(2)) +
              gy * (roll.state_sens[ks].row(1) +
                    off * std::cos(sk.psi) * roll.state_sens[ks].row(2));
          soft_g.push_back(m - 1.0);
          soft_rows.push_back(std::move(r_row));
        }
      }
    }

    g_all = g_linearized;
    const double viol = max_violation(g_all);
    const double viol_l1 = l1_violation(g_all);
    const double cost = rr.squaredNorm();

    // QP over (control step, slacks).
    const int ns = static_cast<int>(soft_g.size());
    const int nz = nu + ns;
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(nz, nz);
    Q.topLeftCorner(nu, nu) = 2.0 * Jr.transpose() * Jr;
    const double damping = 1e-8 * std::max(1.0, Q.topLeftCorner(nu, nu).trace() / nu);
    Q.topLeftCorner(nu, nu).diagonal().array() += damping;
    Q.bottomRightCorner(ns, ns).diagonal().setConstant(1e-8 * penalty + 1e-10);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nz);
    c.head(nu) = 2.0 * Jr.transpose() * rr;
    c.tail(ns).setConstant(penalty);

    const int m_rows = 2 * nu + 2 * ns;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m_rows, nz);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m_rows);
    int cr = 0;
    for (int k = 0; k < H; ++k) {
      A(cr, 2 * k) = 1.0;
      b(cr++) = prob.limits.a_lo - u[static_cast<std::size_t>(k)].a;
      A(cr, 2 * k) = -1.0;
      b(cr++) = u[static_cast<std::size_t>(k)].a - prob.limits.a_hi;
      A(cr, 2 * k + 1) = 1.0;
      b(cr++) = -prob.limits.delta_max - u[static_cast<std::size_t>(k)].delta;
      A(cr, 2 * k + 1) = -1.0;
      b(cr++) = u[static_cast<std::size_t>(k)].delta - prob.limits.delta_max;
    }
    for (int i = 0; i < ns; ++i) {
      A.block(cr, 0, 1, nu) = soft_rows[static_cast<std::size_t>(i)];
      A(cr, nu + i) = 1.0;
      b(cr++) = -soft_g[static_cast<std::size_t>(i)];
      A(cr + 0, nu + i) = 1.0;
      b(cr++) = 0.0;
    }

    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(nz);
    for (int i = 0; i < ns; ++i) {
      z0(nu + i) = std::max(0.0, -soft_g[static_cast<std::size_t>(i)]);
    }
    const QpResult qp = solve_qp(Q, c, A, b, z0);
    const Eigen::VectorXd pstep = qp.x.head(nu);
    const double slack_sum = qp.x.tail(ns).sum();

    // Stationarity of the true Lagrangian at the current iterate.
    Eigen::VectorXd grad_l = c.head(nu);
    cr = 0;
    for (int k = 0; k < H; ++k) {
      grad_l(2 * k) -= qp.multipliers(cr) - qp.multipliers(cr + 1);
      grad_l(2 * k + 1) -= qp.multipliers(cr + 2) - qp.multipliers(cr + 3);
      cr += 4;
    }
    for (int i = 0; i < ns; ++i) {
      grad_l -= qp.multipliers(cr) * soft_rows[static_cast<std::size_t>(i)].transpose();
      cr += 2;
    }
    kkt = grad_l.lpNorm<Eigen::Infinity>();

    if (settings_.record_log) {
      sol.log.push_back({iter, cost, cost + penalty * viol_l1, kkt, viol,
                         pstep.norm(), penalty});
    }

    if (viol <= settings_.constraint_tol && kkt <= settings_.kkt_tol) {
      sol.status = SolveStatus::kFeasible;
      break;
    }

    // Exact-penalty merit line search along the QP step.
    const double merit0 = cost + penalty * viol_l1;
    const double model_new = cost + c.head(nu).dot(pstep) +
                             0.5 * pstep.dot(Q.topLeftCorner(nu, nu) * pstep) +
                             penalty * slack_sum;
    const double pred = std::max(merit0 - model_new, 1e-16);

    double alpha = 1.0;
    bool accepted = false;
    std::vector<ControlInput> u_trial = u;
    Values tv;
    for (int ls = 0; ls < 14; ++ls) {
      for (int k = 0; k < H; ++k) {
        u_trial[static_cast<std::size_t>(k)].a =
            std::clamp(u[static_cast<std::size_t>(k)].a + alpha * pstep(2 * k),
                       prob.limits.a_lo, prob.limits.a_hi);
        u_trial[static_cast<std::size_t>(k)].delta =
            std::clamp(u[static_cast<std::size_t>(k)].delta + alpha * pstep(2 * k + 1),
                       -prob.limits.delta_max, prob.limits.delta_max);
      }
      tv = roll_values(prob, u_trial);
      soft_values(prob, tv, &g_trial);
      const double merit_trial = tv.cost + penalty * l1_violation(g_trial);
      if (merit_trial <= merit0 - 1e-4 * alpha * pred) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }

    const bool need_more_penalty = slack_sum > 1e-10 * std::max(1, ns);
    if (!accepted || pstep.lpNorm<Eigen::Infinity>() < 1e-12) {
      if (need_more_penalty && penalty < settings_.penalty_max * weight_scale) {
        penalty = std::min(penalty * 10.0, settings_.penalty_max * weight_scale);
        continue;  // re-linearize with a stiffer penalty
      }
      sol.status = viol <= settings_.constraint_tol ? SolveStatus::kMaxIterations
                                                    : SolveStatus::kInfeasible;
      break;
    }

    u = u_trial;
    if (need_more_penalty && penalty < settings_.penalty_max * weight_scale) {
      penalty = std::min(penalty * 10.0, settings_.penalty_max * weight_scale);
    }
  }

  if (iter >= settings_.max_iterations) {
    const Values exhausted = roll_values(prob, u);
    soft_values(prob, exhausted, &g_all);
    sol.status = max_violation(g_all) <= settings_.constraint_tol
                     ? SolveStatus::kMaxIterations
                     : SolveStatus::kInfeasible;
  }

  const Values final_vals = roll_values(prob, u);
  soft_values(prob, final_vals, &g_all);
  sol.controls = u;
  sol.states = final_vals.states;
  sol.lambdas = final_vals.lambdas;
  sol.cost = final_vals.cost;
  sol.max_violation = max_violation(g_all);
  sol.kkt_residual = kkt;
  sol.iterations = iter + (iter < settings_.max_iterations ? 1 : 0);
  if (sol.status == SolveStatus::kFeasible &&
      sol.max_violation > settings_.constraint_tol) {
    sol.status = SolveStatus::kInfeasible;  // hard re-check after the loop
  }
  return sol;
}

}  // namespace intmpc
