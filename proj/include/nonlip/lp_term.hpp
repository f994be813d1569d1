#pragma once

#include <Eigen/Core>

#include "nonlip/sets.hpp"

// Separable ℓᵖ quasi-norm term q(x) = Σᵢ wᵢ|xᵢ|ᵖ with p ∈ (0,1), wᵢ ≥ 0,
// and its scalar proximal operators and pointwise subdifferential.

namespace nonlip {

struct LpSeparableTerm {
  double p = 0.5;
  Eigen::VectorXd weights;

  void validate() const;
  double value(const Eigen::VectorXd &x) const;
};

// argmin over t of ½(t−v)² + w|t|ᵖ. Candidates are 0 and the interior
// stationary point on the sign(v) side, found by safeguarded Newton on
// g(t) = t − v + w·p·sign(t)|t|^{p−1} (bisection fallback, |g| tolerance
// 1e-12·scale). Ties are broken toward 0.
double prox_lp_scalar(double v, double w, double p);

// Same objective restricted to t ∈ [lower, upper]; candidates are the
// unconstrained candidates clamped plus the finite interval endpoints.
double prox_lp_box(double v, double w, double p, double lower, double upper);

// ∂(w|·|ᵖ)(u): all of ℝ at u = 0, otherwise the singleton {w·p·|u|^{p−2}u}.
struct SubdiffValue {
  bool all_reals = false;
  double value = 0.0;
  Interval interval() const { return all_reals ? Interval::all() : Interval{value, value}; }
};

SubdiffValue lp_subdiff_point(double u, double w, double p);

} // namespace nonlip
