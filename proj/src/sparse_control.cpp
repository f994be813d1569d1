#include "nonlip/sparse_control.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nonlip {

namespace {

// tridiag(−1, 2, −1)·y = rhs by the Thomas algorithm (diagonally dominant,
// no pivoting needed).
Eigen::VectorXd solve_stencil(const Eigen::VectorXd &rhs) {
  const Eigen::Index n = rhs.size();
  Eigen::VectorXd c(n), d(n);
  c[0] = -0.5;
  d[0] = rhs[0] / 2.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    double denom = 2.0 + c[i - 1];
    c[i] = -1.0 / denom;
    d[i] = (rhs[i] + d[i - 1]) / denom;
  }
  Eigen::VectorXd y(n);
  y[n - 1] = d[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) y[i] = d[i] - c[i] * y[i + 1];
  return y;
}

double bound_subgradient(double bound, double p) { return p * std::pow(std::abs(bound), p - 2.0) * bound; }

} // namespace

ControlGrid make_control_grid(int n) {
  if (n < 1) throw std::invalid_argument("control grid: n must be positive");
  ControlGrid g;
  g.n = n;
  g.h = 1.0 / (n + 1);
  g.nodes.resize(n);
  for (int i = 0; i < n; ++i) g.nodes[i] = (i + 1) * g.h;
  g.weights = Eigen::VectorXd::Constant(n, g.h);
  return g;
}

ForwardOp forward_op_from_string(const std::string &s) {
  if (s == "identity") return ForwardOp::Identity;
  if (s == "laplace1d" || s == "laplace") return ForwardOp::Laplace1D;
  throw std::invalid_argument("unknown forward operator '" + s + "' (expected identity|laplace1d)");
}

TargetKind target_from_string(const std::string &s) {
  if (s == "zero") return TargetKind::Zero;
  if (s == "hat") return TargetKind::Hat;
  if (s == "sine") return TargetKind::Sine;
  throw std::invalid_argument("unknown target '" + s + "' (expected zero|hat|sine)");
}

void SparseControlParams::validate() const {
  if (n < 1) throw std::invalid_argument("sparse control: n must be positive");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sparse control: p must lie in (0,1)");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sparse control: sigma must be nonnegative");
  if (!(ua < 0.0 && 0.0 < ub)) throw std::invalid_argument("sparse control: bounds must satisfy ua < 0 < ub");
  if (!std::isfinite(ua) || !std::isfinite(ub)) throw std::invalid_argument("sparse control: bounds must be finite");
}

Eigen::VectorXd SparseControlInstance::apply_S(const Eigen::VectorXd &u) const {
  if (u.size() != grid.n) throw std::invalid_argument("sparse control: control of wrong length");
  if (params.op == ForwardOp::Identity) return u;
  return solve_stencil(grid.h * grid.h * u);
}

Eigen::VectorXd SparseControlInstance::apply_S_adjoint(const Eigen::VectorXd &r) const {
  return apply_S(r); // symmetric stencil and uniform weights
}

double SparseControlInstance::smooth_value(const Eigen::VectorXd &u) const {
  Eigen::VectorXd r = apply_S(u) - yd;
  return 0.5 * grid.h * r.squaredNorm() + 0.5 * params.sigma * grid.h * u.squaredNorm();
}

Eigen::VectorXd SparseControlInstance::smooth_grad(const Eigen::VectorXd &u) const {
  return apply_S_adjoint(apply_S(u) - yd) + params.sigma * u;
}

SubproblemSpec SparseControlInstance::subproblem() const {
  SubproblemSpec S;
  SparseControlInstance inst = *this; // oracles own a copy, so the spec is self-contained
  S.smooth.n = grid.n;
  S.smooth.value = [inst](const Eigen::VectorXd &u) { return inst.smooth_value(u); };
  S.smooth.grad = [inst](const Eigen::VectorXd &u) { return inst.smooth_grad(u); };
  S.q = LpSeparableTerm{params.p, grid.weights};
  S.box = BoxSet::uniform(grid.n, params.ua, params.ub);
  S.mass = grid.weights;
  return S;
}

ProblemSpec SparseControlInstance::problem() const {
  SubproblemSpec S = subproblem();
  ProblemSpec P;
  P.f = S.smooth;
  P.q = S.q;
  P.C = S.box;
  P.mass = S.mass;
  return P;
}

SparseControlInstance build_instance(const SparseControlParams &params) {
  params.validate();
  SparseControlInstance inst;
  inst.params = params;
  inst.grid = make_control_grid(params.n);
  inst.yd = sample_target(params.target, inst.grid);
  return inst;
}

Eigen::VectorXd sample_target(TargetKind kind, const ControlGrid &grid) {
  Eigen::VectorXd y(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    double x = grid.nodes[i];
    switch (kind) {
      case TargetKind::Zero: y[i] = 0.0; break;
      case TargetKind::Hat: y[i] = 1.0 - 2.0 * std::abs(x - 0.5); break;
      case TargetKind::Sine: y[i] = std::sin(std::numbers::pi * x); break;
    }
  }
  return y;
}

OCSolution solve_oc(const SparseControlInstance &inst, const PGConfig &cfg) {
  SubproblemSpec S = inst.subproblem();
  PGResult res = solve_nonmonotone_pg(S, Eigen::VectorXd::Zero(inst.grid.n), cfg);
  OCSolution sol;
  sol.u = res.x;
  sol.eta = -inst.smooth_grad(res.x);
  sol.y = inst.apply_S(res.x);
  sol.objective = res.value;
  sol.residual = res.residual;
  sol.iterations = res.iterations;
  sol.status = res.status;
  return sol;
}

VerifyReport verify_sparse_control(const SparseControlInstance &inst, const Eigen::VectorXd &u,
                                   const Eigen::VectorXd &eta, double tol_res, double tol_act) {
  if (u.size() != inst.grid.n || eta.size() != inst.grid.n)
    throw std::invalid_argument("sparse control: verification vectors of wrong length");

  const double p = inst.params.p;
  const double lo_sub = bound_subgradient(inst.params.ua, p);
  const double up_sub = bound_subgradient(inst.params.ub, p);

  VerifyReport rep;
  Eigen::VectorXd g = inst.smooth_grad(u) + eta;
  rep.grad_violation = std::sqrt(inst.grid.h * g.squaredNorm());

  for (int i = 0; i < inst.grid.n; ++i) {
    if (u[i] <= inst.params.ua + tol_act) {
      ++rep.lower_active;
      rep.lower_violation = std::max(rep.lower_violation, eta[i] - lo_sub);
    } else if (u[i] >= inst.params.ub - tol_act) {
      ++rep.upper_active;
      rep.upper_violation = std::max(rep.upper_violation, up_sub - eta[i]);
    } else if (std::abs(u[i]) <= tol_act) {
      ++rep.zero_nodes;
    } else {
      ++rep.free_nonzero;
      double want = p * std::pow(std::abs(u[i]), p - 2.0) * u[i];
      rep.free_violation = std::max(rep.free_violation, std::abs(eta[i] - want));
    }
  }
  rep.ok = rep.grad_violation <= tol_res && rep.free_violation <= tol_res && rep.lower_violation <= tol_res &&
           rep.upper_violation <= tol_res;
  return rep;
}

SparsityStats sparsity_stats(const SparseControlInstance &inst, const Eigen::VectorXd &u, double tol_act) {
  if (u.size() != inst.grid.n) throw std::invalid_argument("sparse control: control of wrong length");
  SparsityStats st;
  double wsum = 0.0;
  for (int i = 0; i < inst.grid.n; ++i) {
    wsum += inst.grid.weights[i];
    if (std::abs(u[i]) > tol_act) {
      ++st.support_count;
      st.support_fraction += inst.grid.weights[i];
    }
    st.lp_mass += inst.grid.weights[i] * std::pow(std::abs(u[i]), inst.params.p);
  }
  st.support_fraction /= wsum;
  return st;
}

} // namespace nonlip
