#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <random>

#include "nonlip/detail/lp.hpp"

using nonlip::detail::lp_feasible_point;

namespace {

bool satisfies(const Eigen::MatrixXd &A, const Eigen::VectorXd &b, const Eigen::VectorXd &lo,
               const Eigen::VectorXd &hi, const Eigen::VectorXd &x, double tol = 1e-8) {
  if (((A * x - b).array() > tol).any()) return false;
  if (((x - hi).array() > tol).any()) return false;
  if (((lo - x).array() > tol).any()) return false;
  return true;
}

} // namespace

TEST_CASE("feasible box systems return a verifiable point") {
  Eigen::MatrixXd A(2, 2);
  A << 1, 1, -1, 2;
  Eigen::VectorXd b(2);
  b << 1.0, 0.5;
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(2, -2.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(2, 2.0);

  auto x = lp_feasible_point(A, b, lo, hi);
  REQUIRE(x.has_value());
  CHECK(satisfies(A, b, lo, hi, *x));
}

TEST_CASE("inconsistent rows are reported infeasible") {
  // x ≤ −1 and −x ≤ −2 demand x ≥ 2 and x ≤ −1 at once.
  Eigen::MatrixXd A(2, 1);
  A << 1, -1;
  Eigen::VectorXd b(2);
  b << -1.0, -2.0;
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(1, -10.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(1, 10.0);
  CHECK_FALSE(lp_feasible_point(A, b, lo, hi).has_value());
}

TEST_CASE("box bounds alone can decide feasibility") {
  // The rows are mild but the box forces x₁ ∈ [3, 4] while x₁ ≤ 2 is required.
  Eigen::MatrixXd A(1, 2);
  A << 1, 0;
  Eigen::VectorXd b(1);
  b << 2.0;
  Eigen::VectorXd lo(2), hi(2);
  lo << 3.0, -1.0;
  hi << 4.0, 1.0;
  CHECK_FALSE(lp_feasible_point(A, b, lo, hi).has_value());

  b << 3.5;
  auto x = lp_feasible_point(A, b, lo, hi);
  REQUIRE(x.has_value());
  CHECK(satisfies(A, b, lo, hi, *x));
}

TEST_CASE("equality encoded as opposite rows") {
  // x + y ≤ 1 and −x − y ≤ −1 pin the sum exactly.
  Eigen::MatrixXd A(2, 2);
  A << 1, 1, -1, -1;
  Eigen::VectorXd b(2);
  b << 1.0, -1.0;
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(2, 0.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(2, 1.0);
  auto x = lp_feasible_point(A, b, lo, hi);
  REQUIRE(x.has_value());
  CHECK((*x)(0) + (*x)(1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("degenerate duplicated rows do not cycle") {
  Eigen::MatrixXd A(4, 2);
  A << 1, 0, 1, 0, 0, 1, 0, 1;
  Eigen::VectorXd b(4);
  b << 0.5, 0.5, 0.25, 0.25;
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(2, -1.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(2, 1.0);
  auto x = lp_feasible_point(A, b, lo, hi);
  REQUIRE(x.has_value());
  CHECK(satisfies(A, b, lo, hi, *x));
}

TEST_CASE("zero-row systems reduce to the box") {
  Eigen::MatrixXd A(0, 3);
  Eigen::VectorXd b(0);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(3, -1.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(3, 2.0);
  auto x = lp_feasible_point(A, b, lo, hi);
  REQUIRE(x.has_value());
  CHECK(satisfies(A, b, lo, hi, *x));
}

TEST_CASE("random polytopes agree with rejection sampling") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + trial % 4, n = 1 + (trial / 4) % 3;
    Eigen::MatrixXd A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = u(rng);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) b(i) = u(rng);
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, -1.0);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(n, 1.0);

    // Dense sampling of the box decides feasibility up to grid slack: any hit
    // proves the system feasible, and a clear miss margin proves it empty.
    bool hit = false;
    double closest = 1e30;
    const int grid = 40;
    Eigen::VectorXd p(n);
    int total = 1;
    for (int j = 0; j < n; ++j) total *= grid + 1;
    for (int flat = 0; flat < total; ++flat) {
      int rest = flat;
      for (int j = 0; j < n; ++j) {
        p(j) = -1.0 + 2.0 * (rest % (grid + 1)) / grid;
        rest /= grid + 1;
      }
      double worst = (A * p - b).maxCoeff();
      closest = std::min(closest, worst);
      if (worst <= 0.0) {
        hit = true;
        break;
      }
    }

    auto x = lp_feasible_point(A, b, lo, hi);
    if (hit) {
      ++feasible_seen;
      REQUIRE(x.has_value());
      CHECK(satisfies(A, b, lo, hi, *x));
    } else if (closest > 0.2) {
      ++infeasible_seen;
      CHECK_FALSE(x.has_value());
    }
  }
  // The sweep must genuinely exercise both outcomes.
  CHECK(feasible_seen > 50);
  CHECK(infeasible_seen > 10);
}
