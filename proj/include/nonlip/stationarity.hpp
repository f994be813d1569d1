#pragma once

#include <limits>
#include <string>
#include <vector>

#include "nonlip/alm.hpp"
#include "nonlip/problem.hpp"

// Stationarity certificates.
//
// M-stationarity at a feasible x̄:  0 ∈ f'(x̄) + ∂q(x̄) + G'(x̄)*N_K(G(x̄)) + N_C(x̄).
// The approximate (sequence) form replaces x̄ by nearby base points
// (xₖ, x'ₖ, x''ₖ), perturbs the constraint argument by yₖ → 0, and requires
//   ηₖ = f'(xₖ) + ξₖ + G'(x'ₖ)*λₖ + μₖ → 0
// with λₖ ∈ N_K(G(x'ₖ) − yₖ), μₖ ∈ N_C(x''ₖ), ξₖ ∈ ∂q(xₖ). Multipliers may
// blow up along such sequences, which is exactly what the built-in
// degenerate-parabola family demonstrates.

namespace nonlip {

struct MStatCertificate {
  Eigen::VectorXd x, lambda, mu, xi;
  double residual = 0.0; // ‖f'(x) + ξ + G'(x)*λ + μ‖ₘ
  bool x_in_C = false;
  bool gx_in_K = false;
  bool lambda_in_cone = false;
  bool mu_in_cone = false;
  bool xi_in_subdiff = false;
  std::vector<std::string> component_verdicts; // one per coordinate of x

  bool memberships_ok() const { return x_in_C && gx_in_K && lambda_in_cone && mu_in_cone && xi_in_subdiff; }
  bool stationary(double tol) const { return memberships_ok() && residual <= tol; }
};

// Evaluates the certificate at explicit multipliers. Pass empty λ for
// unconstrained problems; μ, ξ must have length n (ξ must be zero when q is
// absent). Active sets of C and K are classified at tolerance class_tol so
// that terminal iterates that are feasible only to solver accuracy still get
// meaningful cone memberships; the ξ formula itself is checked to 1e-12.
MStatCertificate m_stat_residual(const ProblemSpec &P, const Eigen::VectorXd &x, const Eigen::VectorXd &lambda,
                                 const Eigen::VectorXd &mu, const Eigen::VectorXd &xi, double class_tol = 1e-8);

struct MinResidualResult {
  double residual = 0.0;
  Eigen::VectorXd lambda, mu, xi; // attaining multipliers
};

// min over λ ∈ N_K(G(x)), μ ∈ N_C(x), ξ ∈ ∂q(x) of ‖f'(x) + ξ + G'(x)*λ + μ‖ₘ.
// For fixed λ the inner minimization is an exact componentwise interval
// projection; the λ part is a convex piecewise-quadratic program over the
// normal cone solved by projected gradient from 0 (positively homogeneous, so
// scaling f by s > 0 scales the result by exactly s when q is absent).
// Requires x ∈ C and G(x) ∈ K (tolerance tol_feas for the cone classification).
MinResidualResult m_stat_min_residual(const ProblemSpec &P, const Eigen::VectorXd &x, double tol_feas = 1e-9);

// One member of an approximate-stationarity sequence.
struct SeqEntry {
  Eigen::VectorXd x, x1, x2;  // base points xₖ, x'ₖ, x''ₖ
  Eigen::VectorXd y;          // constraint perturbation yₖ
  Eigen::VectorXd lambda, xi, mu, eta;
  double eps = std::numeric_limits<double>::quiet_NaN(); // optional claimed εₖ
};

struct SeqEntryReport {
  bool lambda_in_cone = false;
  bool mu_in_cone = false;
  bool xi_in_subdiff = false;
  bool eta_identity = false; // ηₖ recomputes to 1e-12
  bool eps_matches = false;  // claimed εₖ matches to 1e-12 (true when unclaimed)
  double eps = 0.0;          // max(‖ηₖ‖, ‖xₖ−x̄‖, ‖x'ₖ−x̄‖, ‖x''ₖ−x̄‖, ‖yₖ‖, |q(xₖ)−q(x̄)|)
  bool ok() const { return lambda_in_cone && mu_in_cone && xi_in_subdiff && eta_identity && eps_matches; }
};

struct ApproxStatReport {
  std::vector<SeqEntryReport> entries;
  bool all_ok = false;
  double eps_final = 0.0;
};

ApproxStatReport approx_stat_check(const ProblemSpec &P, const std::vector<SeqEntry> &seq,
                                   const Eigen::VectorXd &xbar);

// k-th member of the certificate family for degenerate_parabola_problem() at
// x̄ = 0: xₖ = x''ₖ = 0, x'ₖ = −1/(2k), yₖ = 1/(4k²), λₖ = k, ηₖ = 0, εₖ = 1/(2k).
SeqEntry degenerate_parabola_entry(int k);

// Proof-construction tuple from one ALM outer iteration: one prox-gradient
// step at t = 1 from the stored iterate gives the point x̂ carrying an exact
// inclusion; ξ/μ split the prox residue, λ and y come from the multiplier
// update at x̂.
SeqEntry assemble_alm_entry(const ProblemSpec &P, const AlmIterate &it);

enum class QualVerdict { Holds, Fails, Unsupported };

const char *to_string(QualVerdict v);

struct QualReport {
  QualVerdict verdict = QualVerdict::Unsupported;
  Eigen::VectorXd witness; // Fails: ‖λ‖∞ = 1, λ ∈ N_K(G(x)), −G'(x)*λ ∈ N_C(x)
  std::string note;
};

// Checks the qualification condition
//   λ ∈ N_K(G(x)), −G'(x)*λ ∈ N_C(x)  ⟹  λ = 0
// for product-cone K (Box, NonpositiveOrthant, ZeroSet) with m ≤ 10, by
// solving the slice feasibility programs {λ ∈ cone, λᵢ = ±1, ‖λ‖∞ ≤ 1}.
QualReport gmfcq_check(const ProblemSpec &P, const Eigen::VectorXd &x);

} // namespace nonlip
