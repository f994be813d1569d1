#include "nonlip/detail/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nonlip::detail {

namespace {

// Phase-1 simplex on the tableau
//   rows: constraints with slack (+1) and, where the shifted rhs is negative,
//   an artificial column; objective drives Σ artificials to zero.
// Bland's rule keeps the desk-scale instances cycle-free.
bool phase1_feasible(Eigen::MatrixXd &T, std::vector<int> &basis, int n_real, double tol) {
  const int rows = static_cast<int>(T.rows()) - 1;
  const int cols = static_cast<int>(T.cols()) - 1;
  const int obj = rows;
  const int rhs = cols;
  (void)n_real;

  const int max_pivots = 200 * (rows + cols + 1);
  for (int pivot = 0; pivot < max_pivots; ++pivot) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (T(obj, j) < -tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return T(obj, rhs) > -tol && T(obj, rhs) < tol;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (T(i, enter) <= tol) continue;
      double ratio = T(i, rhs) / T(i, enter);
      if (leave < 0 || ratio < best_ratio - tol ||
          (ratio < best_ratio + tol && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("phase-1 simplex became unbounded, which should be impossible");

    double piv = T(leave, enter);
    T.row(leave) /= piv;
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      double factor = T(i, enter);
      if (factor != 0.0) T.row(i) -= factor * T.row(leave);
    }
    basis[leave] = enter;
  }
  throw std::runtime_error("phase-1 simplex exceeded its pivot budget");
}

} // namespace

std::optional<Eigen::VectorXd> lp_feasible_point(const Eigen::MatrixXd &A, const Eigen::VectorXd &b,
                                                 const Eigen::VectorXd &lo, const Eigen::VectorXd &hi,
                                                 double tol) {
  const int n = static_cast<int>(lo.size());
  if (hi.size() != n) throw std::invalid_argument("lp_feasible_point: bound sizes disagree");
  if (A.size() > 0 && A.cols() != n) throw std::invalid_argument("lp_feasible_point: A has wrong column count");
  if (A.rows() != b.size()) throw std::invalid_argument("lp_feasible_point: A and b disagree");
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]))
      throw std::invalid_argument("lp_feasible_point: bounds must be finite");
    if (lo[j] > hi[j]) return std::nullopt;
  }

  // Shift to y = x − lo ≥ 0 and append the upper bounds y_j ≤ hi_j − lo_j as rows.
  const int m_in = static_cast<int>(A.rows());
  const int rows = m_in + n;
  Eigen::MatrixXd C(rows, n);
  Eigen::VectorXd c(rows);
  if (m_in > 0) {
    C.topRows(m_in) = A;
    c.head(m_in) = b - A * lo;
  }
  C.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
  c.tail(n) = hi - lo;

  int n_art = 0;
  for (int i = 0; i < rows; ++i)
    if (c[i] < 0.0) ++n_art;

  const int cols = n + rows + n_art;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  std::vector<int> basis(rows, -1);

  int art = n + rows;
  for (int i = 0; i < rows; ++i) {
    double sign = c[i] < 0.0 ? -1.0 : 1.0;
    T.block(i, 0, 1, n) = sign * C.row(i);
    T(i, n + i) = sign;
    T(i, cols) = sign * c[i];
    if (c[i] < 0.0) {
      T(i, art) = 1.0;
      basis[i] = art;
      // Price the artificial out of the objective row: w = Σ artificials.
      T.row(rows) -= T.row(i);
      T(rows, art) += 1.0;
      ++art;
    } else {
      basis[i] = n + i;
    }
  }

  if (!phase1_feasible(T, basis, n, tol)) return std::nullopt;

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < rows; ++i)
    if (basis[i] < n) y[basis[i]] = T(i, cols);

  Eigen::VectorXd x = y + lo;
  for (int j = 0; j < n; ++j) x[j] = std::min(hi[j], std::max(lo[j], x[j]));
  if (m_in > 0) {
    Eigen::VectorXd viol = A * x - b;
    double worst = viol.maxCoeff();
    double ref = 1.0 + std::max(b.cwiseAbs().maxCoeff(), (A * x).cwiseAbs().maxCoeff());
    if (worst > 1e3 * tol * ref) return std::nullopt;
  }
  return x;
}

} // namespace nonlip::detail
