#pragma once

#include <functional>
#include <vector>

#include "nonlip/subsolver.hpp"

// Safeguarded augmented Lagrangian method. Each outer iteration projects the
// multiplier onto the safeguarding box B = [−b, b]ᵐ, approximately minimizes
// L_θ(·, u) over C from the previous iterate, updates the multiplier through
// the projection residual, and grows θ by γ unless the progress measure V
// decreased by the factor τ.

namespace nonlip {

enum class SubsolverKind { ProxGradient, BruteForceGlobal };

struct BruteForceSchedule {
  BoxSet bounds;      // search window handed to brute_force_global
  double h0 = 0.05;   // spacing at k = 0; hₖ = h0/(k+1)
};

struct AlmConfig {
  double theta0 = 10.0;
  double gamma = 10.0;
  double tau = 0.5;
  double safeguard_bound = 1e20; // B = [−b, b]ᵐ
  double tol_feas = 1e-6;
  double tol_stat = 1e-6;
  double theta_max = 1e12;
  int k_max = 200;
  SubsolverKind subsolver = SubsolverKind::ProxGradient;
  PGConfig pg;
  std::optional<BruteForceSchedule> brute_force;

  void validate() const;
};

enum class AlmStatus { Converged, InfeasibleStationary, IterLimit, PenaltyLimit };

const char *to_string(AlmStatus s);

struct AlmTraceRow {
  int k = 0;
  double theta = 0.0;
  double v_progress = 0.0;
  int inner_iterations = 0;
  double inner_residual = 0.0;
  double lambda_inf = 0.0;    // ‖λₖ₊₁‖∞
  double safeguard_inf = 0.0; // ‖uₖ‖∞
  double objective = 0.0;     // f + q at xₖ₊₁
  double feasibility = 0.0;   // dist_K(G(xₖ₊₁))
};

// Data retained per outer iteration for stationarity-certificate assembly.
struct AlmIterate {
  Eigen::VectorXd x; // subsolver output xₖ₊₁
  Eigen::VectorXd u; // safeguarded multiplier uₖ
  double theta = 0.0;
  double inner_residual = 0.0;
};

struct AlmResult {
  Eigen::VectorXd x, lambda;
  double theta = 0.0;
  AlmStatus status = AlmStatus::IterLimit;
  int outer_iterations = 0;
  double objective = 0.0;
  double feasibility = 0.0;
  double inner_residual = 0.0;
  std::vector<AlmTraceRow> trace;
  std::vector<AlmIterate> iterates;
};

// Componentwise projection of λ onto [−bound, bound]ᵐ.
Eigen::VectorXd safeguard(const Eigen::VectorXd &lambda, double bound);

// λ⁺ = θ[G(x⁺) + u/θ − P_K(G(x⁺) + u/θ)].
Eigen::VectorXd multiplier_update(const ProblemSpec &P, const Eigen::VectorXd &x_next,
                                  const Eigen::VectorXd &u, double theta);

// θ stays when k = 0 or v_cur ≤ τ·v_prev, else grows by γ.
double penalty_update(double theta, double v_cur, double v_prev, double tau, double gamma, int k);

using TraceSink = std::function<void(const AlmTraceRow &)>;

// Runs the method from (x0, λ0); x0 is clamped into C and λ0 is safeguarded
// before first use. Unconstrained problems dispatch straight to the subsolver.
// Rows are appended to result.trace and also forwarded to `sink` if given;
// distinct runs may write to distinct sinks concurrently.
AlmResult run_alm(const ProblemSpec &P, Eigen::VectorXd x0, Eigen::VectorXd lambda0,
                  const AlmConfig &cfg = {}, const TraceSink &sink = {});

} // namespace nonlip
