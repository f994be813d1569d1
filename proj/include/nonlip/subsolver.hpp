#pragma once

#include <cstdint>
#include <optional>

#include "nonlip/problem.hpp"

// Inner solvers for  min s(x) + q(x)  s.t.  x ∈ box:
//  - a nonmonotone proximal-gradient method with Barzilai-Borwein steps,
//  - a brute-force grid search for certified approximate global minima.

namespace nonlip {

struct SubproblemSpec {
  SmoothFunctional smooth;
  std::optional<LpSeparableTerm> q;
  BoxSet box;
  Eigen::VectorXd mass; // empty means all ones

  Eigen::Index n() const { return smooth.n; }
  void validate() const;
  Eigen::VectorXd mass_or_ones() const;
  double weighted_norm(const Eigen::VectorXd &v) const;
  double value(const Eigen::VectorXd &x) const; // s + q
};

// Augmented Lagrangian subproblem of P at safeguarded multiplier u and
// penalty θ: smooth part f + (θ/2)dist²_K(G(·) + u/θ), plus q, over C.
// The returned oracles reference P, which must outlive the subproblem.
SubproblemSpec penalty_subproblem(const ProblemSpec &P, const Eigen::VectorXd &u, double theta);

// Subproblem whose smooth part is the infeasibility measure ½dist²_K(G(·));
// q is dropped. Used to certify stationarity of infeasible exits.
SubproblemSpec infeasibility_subproblem(const ProblemSpec &P);

// x⁺ᵢ = prox of the q-term in the mass-weighted metric after the forward
// step x − t·∇s(x): componentwise prox_lp_box(vᵢ, t·wᵢ/mᵢ, p, lᵢ, uᵢ),
// reducing to the box clamp when q is absent.
Eigen::VectorXd prox_grad_step(const SubproblemSpec &S, const Eigen::VectorXd &x, double t);
Eigen::VectorXd prox_grad_step_from(const SubproblemSpec &S, const Eigen::VectorXd &x,
                                    const Eigen::VectorXd &grad, double t);

// ‖x − prox_grad_step(x, t)‖ₘ / t.
double stationarity_residual(const SubproblemSpec &S, const Eigen::VectorXd &x, double t = 1.0);

struct PGConfig {
  int max_iterations = 20000;
  double tol = 1e-8;      // on the t = 1 prox-gradient residual
  double t0 = 1.0;        // first trial step
  int memory = 10;        // nonmonotone window
  double armijo = 1e-4;   // sufficient-decrease constant
  double backtrack = 0.5; // step shrink factor
  double bb_min = 1e-10, bb_max = 1e10;
  int max_backtracks = 60;
};

enum class PGStatus { Stationary, IterLimit };

struct PGResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double residual = 0.0; // t = 1 prox-gradient residual at x
  int iterations = 0;
  PGStatus status = PGStatus::Stationary;
};

// Nonmonotone proximal gradient: BB1 steps clamped to [bb_min, bb_max],
// max-window Armijo acceptance F(x⁺) ≤ max window − (c/2t)‖x⁺−x‖²ₘ.
// Non-finite objective or gradient values at iterates raise std::runtime_error,
// as does exhausting max_backtracks in one iteration.
PGResult solve_nonmonotone_pg(const SubproblemSpec &S, Eigen::VectorXd x0, const PGConfig &cfg = {});

struct BruteForceResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double eps_bound = 0.0; // value ≤ global min + eps_bound (sampled-Lipschitz estimate)
  std::int64_t points = 0;
};

// Exhaustive grid search over bounds ∩ box at spacing h. Grids are snapped so
// that 0 is a node in every dimension that straddles it, and cells adjacent to
// zero are swept once more at half spacing (the |·|ᵖ modulus degrades there).
// Refuses n > 3 or grids beyond 10⁷ points.
BruteForceResult brute_force_global(const SubproblemSpec &S, const BoxSet &bounds, double h);

} // namespace nonlip
