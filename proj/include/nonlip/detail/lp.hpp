#pragma once

#include <Eigen/Core>
#include <optional>

// Dense phase-1 simplex for small feasibility systems
//   { x : A x ≤ b, lo ≤ x ≤ hi }
// with finite lo/hi. Intended for the desk-scale cone slices of the
// qualification check (tens of rows and columns).

namespace nonlip::detail {

std::optional<Eigen::VectorXd> lp_feasible_point(const Eigen::MatrixXd &A, const Eigen::VectorXd &b,
                                                 const Eigen::VectorXd &lo, const Eigen::VectorXd &hi,
                                                 double tol = 1e-11);

} // namespace nonlip::detail
