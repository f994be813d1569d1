#pragma once

#include <Eigen/Core>
#include <functional>

// Finite-difference validation helpers for user-supplied oracles.
//
// Gradients and adjoints are understood as Riesz representatives with respect
// to the weighted inner product ⟨u,v⟩ = Σᵢ mᵢuᵢvᵢ on the domain space; the
// constraint space carries the standard Euclidean product.

namespace nonlip {

// Max relative error between grad(x) and central differences of value,
// componentwise step 1e-6·(1+|xᵢ|).
double gradient_fd_error(const std::function<double(const Eigen::VectorXd &)> &value,
                         const std::function<Eigen::VectorXd(const Eigen::VectorXd &)> &grad,
                         const Eigen::VectorXd &x,
                         const Eigen::VectorXd &mass = Eigen::VectorXd());

// Max relative error of ⟨G'(x)v, w⟩ − ⟨v, G'(x)*w⟩ over random (v,w) pairs,
// with G'(x)v formed by central differences of value.
double adjoint_fd_error(const std::function<Eigen::VectorXd(const Eigen::VectorXd &)> &value,
                        const std::function<Eigen::VectorXd(const Eigen::VectorXd &, const Eigen::VectorXd &)> &adjoint,
                        const Eigen::VectorXd &x, int trials, unsigned seed,
                        const Eigen::VectorXd &mass = Eigen::VectorXd());

} // namespace nonlip
