#pragma once

#include <string>

#include "nonlip/subsolver.hpp"

// Discrete sparse control on D = (0,1):
//   min ½‖S u − y_d‖²_w + (σ/2)‖u‖²_w + Σᵢ wᵢ|uᵢ|ᵖ   s.t.  u_a ≤ u ≤ u_b,
// with midpoint quadrature weights wᵢ = h on n interior nodes, so the
// discrete geometry matches L²(0,1) and the optimality system is h-free:
// with η := −f'(ū),
//   (a) f'(ū) + η = 0,
//   (b) η = p|ū|^{p−2}ū       on {ū ≠ 0} ∩ {u_a < ū < u_b},
//   (c) η ≤ p|u_a|^{p−2}u_a   on {ū = u_a},
//   (d) η ≥ p|u_b|^{p−2}u_b   on {ū = u_b}.

namespace nonlip {

struct ControlGrid {
  int n = 0;
  double h = 0.0;
  Eigen::VectorXd nodes;   // xᵢ = i·h, i = 1..n
  Eigen::VectorXd weights; // wᵢ = h
};

ControlGrid make_control_grid(int n);

enum class ForwardOp { Identity, Laplace1D };
enum class TargetKind { Zero, Hat, Sine };

ForwardOp forward_op_from_string(const std::string &s);
TargetKind target_from_string(const std::string &s);

struct SparseControlParams {
  int n = 127;
  double p = 0.5;
  double sigma = 1e-4;
  double ua = -30.0, ub = 30.0; // requires ua < 0 < ub
  TargetKind target = TargetKind::Hat;
  ForwardOp op = ForwardOp::Laplace1D;

  void validate() const;
};

struct SparseControlInstance {
  ControlGrid grid;
  SparseControlParams params;
  Eigen::VectorXd yd;

  // S and its w-adjoint (Laplace1D is self-adjoint in the w-inner product:
  // the three-point stencil matrix is symmetric and w = h·I).
  Eigen::VectorXd apply_S(const Eigen::VectorXd &u) const;
  Eigen::VectorXd apply_S_adjoint(const Eigen::VectorXd &r) const;

  double smooth_value(const Eigen::VectorXd &u) const;
  Eigen::VectorXd smooth_grad(const Eigen::VectorXd &u) const; // S*(Su − y_d) + σu

  SubproblemSpec subproblem() const;
  ProblemSpec problem() const; // unconstrained composite form (no G, K)
};

SparseControlInstance build_instance(const SparseControlParams &params);

// Target samples on the grid: zero, the hat 1 − 2|x − ½|, or sin(πx).
Eigen::VectorXd sample_target(TargetKind kind, const ControlGrid &grid);

struct OCSolution {
  Eigen::VectorXd u, eta, y; // η = −f'(u), y = S u
  double objective = 0.0;
  double residual = 0.0;
  int iterations = 0;
  PGStatus status = PGStatus::Stationary;
};

OCSolution solve_oc(const SparseControlInstance &inst, const PGConfig &cfg = {});

struct VerifyReport {
  bool ok = false;
  double grad_violation = 0.0;  // (a) ‖f'(u) + η‖_w
  double free_violation = 0.0;  // (b) max |η − p|u|^{p−2}u| on free nonzero nodes
  double lower_violation = 0.0; // (c) max (η − p|u_a|^{p−2}u_a)₊ on lower-active nodes
  double upper_violation = 0.0; // (d) max (p|u_b|^{p−2}u_b − η)₊ on upper-active nodes
  int free_nonzero = 0, zero_nodes = 0, lower_active = 0, upper_active = 0;
};

// Active bands are classified with tolerance tol_act; each condition must
// hold up to tol_res.
VerifyReport verify_sparse_control(const SparseControlInstance &inst, const Eigen::VectorXd &u,
                                   const Eigen::VectorXd &eta, double tol_res, double tol_act);

struct SparsityStats {
  int support_count = 0;
  double support_fraction = 0.0; // weighted: Σ_{|uᵢ|>tol} wᵢ / Σ wᵢ
  double lp_mass = 0.0;          // Σ wᵢ|uᵢ|ᵖ
};

SparsityStats sparsity_stats(const SparseControlInstance &inst, const Eigen::VectorXd &u, double tol_act);

} // namespace nonlip
