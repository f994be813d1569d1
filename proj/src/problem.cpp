#include "nonlip/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace nonlip {

void ProblemSpec::validate() const {
  if (f.n <= 0 || !f.value || !f.grad) throw std::invalid_argument("problem: f must carry n, value and grad");
  if (q) {
    q->validate();
    if (q->weights.size() != f.n) throw std::invalid_argument("problem: q weight size mismatch");
  }
  if (G.has_value() != K.has_value()) throw std::invalid_argument("problem: G and K must come together");
  if (G) {
    if (G->n != f.n) throw std::invalid_argument("problem: G domain mismatch");
    if (G->m <= 0 || !G->value || !G->adjoint) throw std::invalid_argument("problem: G must carry m, value and adjoint");
    nonlip::validate(*K);
    if (set_dim(*K) != G->m) throw std::invalid_argument("problem: K dimension mismatch");
  }
  C.validate();
  if (C.dim() != f.n) throw std::invalid_argument("problem: C dimension mismatch");
  if (mass.size() != 0) {
    if (mass.size() != f.n) throw std::invalid_argument("problem: mass size mismatch");
    for (Eigen::Index i = 0; i < mass.size(); ++i)
      if (!(mass[i] > 0.0) || !std::isfinite(mass[i])) throw std::invalid_argument("problem: mass must be positive");
  }
}

Eigen::VectorXd ProblemSpec::mass_or_ones() const {
  return mass.size() ? mass : Eigen::VectorXd::Ones(f.n);
}

double ProblemSpec::weighted_norm(const Eigen::VectorXd &v) const {
  if (mass.size() == 0) return v.norm();
  return std::sqrt(v.cwiseProduct(v).dot(mass));
}

double ProblemSpec::objective(const Eigen::VectorXd &x) const {
  return f.value(x) + (q ? q->value(x) : 0.0);
}

namespace {

// Shifted constraint z = G(x) + λ/θ and its projection residue z − P_K(z).
struct PenaltyParts {
  Eigen::VectorXd gx, z, residue;
};

PenaltyParts penalty_parts(const ProblemSpec &P, const Eigen::VectorXd &x, const Eigen::VectorXd &lambda,
                           double theta) {
  if (!P.G) throw std::invalid_argument("augmented Lagrangian: problem has no constraint map");
  if (!(theta > 0.0)) throw std::invalid_argument("augmented Lagrangian: theta must be positive");
  if (lambda.size() != P.G->m) throw std::invalid_argument("augmented Lagrangian: multiplier size mismatch");
  PenaltyParts parts;
  parts.gx = P.G->value(x);
  parts.z = parts.gx + lambda / theta;
  parts.residue = parts.z - project(*P.K, parts.z);
  return parts;
}

} // namespace

double aug_lagrangian_value(const ProblemSpec &P, const Eigen::VectorXd &x, const Eigen::VectorXd &lambda,
                            double theta) {
  auto parts = penalty_parts(P, x, lambda, theta);
  return P.f.value(x) + 0.5 * theta * parts.residue.squaredNorm() + (P.q ? P.q->value(x) : 0.0);
}

Eigen::VectorXd aug_lagrangian_smooth_grad(const ProblemSpec &P, const Eigen::VectorXd &x,
                                           const Eigen::VectorXd &lambda, double theta) {
  auto parts = penalty_parts(P, x, lambda, theta);
  return P.f.grad(x) + theta * P.G->adjoint(x, parts.residue);
}

double penalty_progress(const ProblemSpec &P, const Eigen::VectorXd &x, const Eigen::VectorXd &lambda,
                        double theta) {
  auto parts = penalty_parts(P, x, lambda, theta);
  return (parts.gx - (parts.z - parts.residue)).norm();
}

double feasibility_gap(const ProblemSpec &P, const Eigen::VectorXd &x) {
  if (!P.G) return 0.0;
  return dist_and_distsq(*P.K, P.G->value(x)).dist;
}

ProblemSpec degenerate_parabola_problem() {
  ProblemSpec P;
  P.f.n = 1;
  P.f.value = [](const Eigen::VectorXd &x) { return x[0]; };
  P.f.grad = [](const Eigen::VectorXd &x) {
    (void)x;
    return Eigen::VectorXd::Ones(1).eval();
  };
  SmoothMap G;
  G.n = 1;
  G.m = 1;
  G.value = [](const Eigen::VectorXd &x) { return Eigen::VectorXd::Constant(1, x[0] * x[0]).eval(); };
  G.adjoint = [](const Eigen::VectorXd &x, const Eigen::VectorXd &w) {
    return Eigen::VectorXd::Constant(1, (2.0 * x[0]) * w[0]).eval();
  };
  P.G = std::move(G);
  P.K = NonpositiveOrthant{1};
  P.C = BoxSet::free(1);
  return P;
}

} // namespace nonlip
