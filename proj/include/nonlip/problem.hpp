#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>

#include "nonlip/lp_term.hpp"
#include "nonlip/sets.hpp"

// Problem data for  min f(x) + q(x)  s.t.  G(x) ∈ K,  x ∈ C ⊆ ℝⁿ,
// with f continuously differentiable, q an optional separable ℓᵖ term,
// G an optional smooth map into ℝᵐ with closed convex K, and C a box.
//
// Riesz convention: the domain space carries ⟨u,v⟩ = Σᵢ mᵢuᵢvᵢ with mass
// weights m (default all ones); gradient and adjoint oracles return
// representatives in that inner product. The constraint space is Euclidean.

namespace nonlip {

struct SmoothFunctional {
  Eigen::Index n = 0;
  std::function<double(const Eigen::VectorXd &)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd &)> grad;
};

struct SmoothMap {
  Eigen::Index n = 0, m = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd &)> value;
  // (x, w) ↦ G'(x)*w
  std::function<Eigen::VectorXd(const Eigen::VectorXd &, const Eigen::VectorXd &)> adjoint;
};

struct ProblemSpec {
  SmoothFunctional f;
  std::optional<LpSeparableTerm> q;
  std::optional<SmoothMap> G;
  std::optional<ConvexSetDescriptor> K;
  BoxSet C;
  Eigen::VectorXd mass; // empty means all ones

  Eigen::Index n() const { return f.n; }
  Eigen::Index m() const { return G ? G->m : 0; }
  bool constrained() const { return G.has_value(); }
  void validate() const;

  Eigen::VectorXd mass_or_ones() const;
  double weighted_norm(const Eigen::VectorXd &v) const;
  double objective(const Eigen::VectorXd &x) const; // f + q
};

// L_θ(x,λ) = f(x) + (θ/2)·dist²_K(G(x) + λ/θ) + q(x).
double aug_lagrangian_value(const ProblemSpec &P, const Eigen::VectorXd &x, const Eigen::VectorXd &lambda,
                            double theta);

// Gradient of the smooth part f + (θ/2)·dist²_K(G(·) + λ/θ):
//   f'(x) + θ·G'(x)*[G(x) + λ/θ − P_K(G(x) + λ/θ)].
Eigen::VectorXd aug_lagrangian_smooth_grad(const ProblemSpec &P, const Eigen::VectorXd &x,
                                           const Eigen::VectorXd &lambda, double theta);

// V_θ(x,λ) = ‖G(x) − P_K(G(x) + λ/θ)‖, the penalty progress measure.
double penalty_progress(const ProblemSpec &P, const Eigen::VectorXd &x, const Eigen::VectorXd &lambda,
                        double theta);

// dist_K(G(x)); 0 for unconstrained problems.
double feasibility_gap(const ProblemSpec &P, const Eigen::VectorXd &x);

// Built-in instance  min x  s.t.  x² ≤ 0  on ℝ: the feasible set is the
// single point 0 where the constraint gradient vanishes, so multiplier
// sequences must blow up. Used by demos and certificate tests.
ProblemSpec degenerate_parabola_problem();

} // namespace nonlip
