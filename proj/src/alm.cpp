#include "nonlip/alm.hpp"

#include <cmath>
#include <stdexcept>

namespace nonlip {

void AlmConfig::validate() const {
  if (!(theta0 > 0.0)) throw std::invalid_argument("alm: theta0 must be positive");
  if (!(gamma > 1.0)) throw std::invalid_argument("alm: gamma must exceed 1");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("alm: tau must lie in (0,1)");
  if (!(safeguard_bound > 0.0)) throw std::invalid_argument("alm: safeguard bound must be positive");
  if (!(tol_feas > 0.0 && tol_stat > 0.0)) throw std::invalid_argument("alm: tolerances must be positive");
  if (!(theta_max >= theta0)) throw std::invalid_argument("alm: theta_max must be at least theta0");
  if (k_max <= 0) throw std::invalid_argument("alm: k_max must be positive");
  if (subsolver == SubsolverKind::BruteForceGlobal && !brute_force)
    throw std::invalid_argument("alm: brute-force subsolver needs a search schedule");
}

const char *to_string(AlmStatus s) {
  switch (s) {
    case AlmStatus::Converged: return "Converged";
    case AlmStatus::InfeasibleStationary: return "InfeasibleStationary";
    case AlmStatus::IterLimit: return "IterLimit";
    case AlmStatus::PenaltyLimit: return "PenaltyLimit";
  }
  return "Unknown";
}

Eigen::VectorXd safeguard(const Eigen::VectorXd &lambda, double bound) {
  if (!(bound > 0.0)) throw std::invalid_argument("safeguard: bound must be positive");
  return lambda.cwiseMax(-bound).cwiseMin(bound);
}

Eigen::VectorXd multiplier_update(const ProblemSpec &P, const Eigen::VectorXd &x_next, const Eigen::VectorXd &u,
                                  double theta) {
  if (!P.G) throw std::invalid_argument("multiplier update: problem has no constraint map");
  Eigen::VectorXd z = P.G->value(x_next) + u / theta;
  return theta * (z - project(*P.K, z));
}

double penalty_update(double theta, double v_cur, double v_prev, double tau, double gamma, int k) {
  if (k == 0 || v_cur <= tau * v_prev) return theta;
  return gamma * theta;
}

namespace {

// Unconstrained problems go straight to the inner solver.
AlmResult solve_unconstrained(const ProblemSpec &P, Eigen::VectorXd x0, const AlmConfig &cfg,
                              const TraceSink &sink) {
  SubproblemSpec S;
  S.smooth = P.f;
  S.q = P.q;
  S.box = P.C;
  S.mass = P.mass;
  PGConfig pg = cfg.pg;
  pg.tol = std::min(pg.tol, cfg.tol_stat);
  PGResult inner = solve_nonmonotone_pg(S, std::move(x0), pg);
  AlmResult res;
  res.x = inner.x;
  res.lambda = Eigen::VectorXd();
  res.theta = cfg.theta0;
  res.status = inner.status == PGStatus::Stationary ? AlmStatus::Converged : AlmStatus::IterLimit;
  res.outer_iterations = 1;
  res.objective = P.objective(inner.x);
  res.feasibility = 0.0;
  res.inner_residual = inner.residual;
  res.iterates.push_back({inner.x, Eigen::VectorXd(), cfg.theta0, inner.residual});
  AlmTraceRow row;
  row.k = 0;
  row.theta = cfg.theta0;
  row.inner_iterations = inner.iterations;
  row.inner_residual = inner.residual;
  row.objective = res.objective;
  res.trace.push_back(row);
  if (sink) sink(row);
  return res;
}

struct InnerSolve {
  Eigen::VectorXd x;
  double residual = 0.0;
  int iterations = 0;
};

InnerSolve solve_inner(const ProblemSpec &P, const SubproblemSpec &S, const Eigen::VectorXd &warm,
                       const AlmConfig &cfg, int k) {
  InnerSolve out;
  if (cfg.subsolver == SubsolverKind::ProxGradient) {
    PGResult r = solve_nonmonotone_pg(S, warm, cfg.pg);
    out.x = r.x;
    out.residual = r.residual;
    out.iterations = r.iterations;
    return out;
  }
  const BruteForceSchedule &sched = *cfg.brute_force;
  double h = sched.h0 / static_cast<double>(k + 1);
  BruteForceResult r = brute_force_global(S, sched.bounds, h);
  out.x = r.x;
  out.residual = stationarity_residual(S, r.x, 1.0);
  out.iterations = static_cast<int>(std::min<std::int64_t>(r.points, INT32_MAX));
  (void)P;
  return out;
}

} // namespace

AlmResult run_alm(const ProblemSpec &P, Eigen::VectorXd x0, Eigen::VectorXd lambda0, const AlmConfig &cfg,
                  const TraceSink &sink) {
  P.validate();
  cfg.validate();
  if (x0.size() != P.n()) throw std::invalid_argument("alm: x0 dimension mismatch");
  if (!P.constrained()) return solve_unconstrained(P, std::move(x0), cfg, sink);
  if (lambda0.size() != P.m()) throw std::invalid_argument("alm: lambda0 dimension mismatch");

  AlmResult res;
  Eigen::VectorXd x = P.C.clamp(x0);
  Eigen::VectorXd lambda = std::move(lambda0);
  double theta = cfg.theta0;
  double v_prev = 0.0;

  for (int k = 0; k < cfg.k_max; ++k) {
    Eigen::VectorXd u = safeguard(lambda, cfg.safeguard_bound);
    SubproblemSpec S = penalty_subproblem(P, u, theta);

    // Termination: feasible and stationary for the current subproblem.
    double feas = feasibility_gap(P, x);
    double stat = stationarity_residual(S, x, 1.0);
    if (feas <= cfg.tol_feas && stat <= cfg.tol_stat) {
      res.status = AlmStatus::Converged;
      res.x = x;
      res.lambda = lambda;
      res.theta = theta;
      res.outer_iterations = k;
      res.objective = P.objective(x);
      res.feasibility = feas;
      res.inner_residual = stat;
      // The accepted point is stationary for L_θ(·, u); keep it so
      // certificates can be assembled even when no subproblem was solved.
      if (res.iterates.empty()) res.iterates.push_back({x, u, theta, stat});
      return res;
    }

    InnerSolve inner = solve_inner(P, S, x, cfg, k);
    Eigen::VectorXd x_next = inner.x;
    Eigen::VectorXd lambda_next = multiplier_update(P, x_next, u, theta);
    double v_cur = penalty_progress(P, x_next, u, theta);

    AlmTraceRow row;
    row.k = k;
    row.theta = theta;
    row.v_progress = v_cur;
    row.inner_iterations = inner.iterations;
    row.inner_residual = inner.residual;
    row.lambda_inf = lambda_next.size() ? lambda_next.cwiseAbs().maxCoeff() : 0.0;
    row.safeguard_inf = u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
    row.objective = P.objective(x_next);
    row.feasibility = feasibility_gap(P, x_next);
    res.trace.push_back(row);
    if (sink) sink(row);
    res.iterates.push_back({x_next, u, theta, inner.residual});

    double theta_next = penalty_update(theta, v_cur, v_prev, cfg.tau, cfg.gamma, k);
    x = std::move(x_next);
    lambda = std::move(lambda_next);
    v_prev = v_cur;

    if (theta_next > cfg.theta_max) {
      res.x = x;
      res.lambda = lambda;
      res.theta = theta;
      res.outer_iterations = k + 1;
      res.objective = P.objective(x);
      res.feasibility = row.feasibility;
      res.inner_residual = inner.residual;
      if (row.feasibility <= cfg.tol_feas && inner.residual <= cfg.tol_stat) {
        res.status = AlmStatus::Converged;
      } else if (row.feasibility > cfg.tol_feas &&
                 stationarity_residual(infeasibility_subproblem(P), x, 1.0) <= cfg.tol_stat) {
        // Genuinely stuck: the gap is positive yet ½dist²_K(G(·)) is
        // stationary, so no nearby point closes the constraint.
        res.status = AlmStatus::InfeasibleStationary;
      } else {
        res.status = AlmStatus::PenaltyLimit;
      }
      return res;
    }
    theta = theta_next;
  }

  res.x = x;
  res.lambda = lambda;
  res.theta = theta;
  res.outer_iterations = cfg.k_max;
  res.objective = P.objective(x);
  res.feasibility = feasibility_gap(P, x);
  res.inner_residual = res.iterates.empty() ? kInf : res.iterates.back().inner_residual;
  res.status = (res.feasibility <= cfg.tol_feas && res.inner_residual <= cfg.tol_stat) ? AlmStatus::Converged
                                                                                       : AlmStatus::IterLimit;
  return res;
}

} // namespace nonlip
