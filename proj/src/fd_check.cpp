#include "nonlip/fd_check.hpp"

#include <cmath>
#include <random>

namespace nonlip {

double gradient_fd_error(const std::function<double(const Eigen::VectorXd &)> &value,
                         const std::function<Eigen::VectorXd(const Eigen::VectorXd &)> &grad,
                         const Eigen::VectorXd &x, const Eigen::VectorXd &mass) {
  Eigen::VectorXd g = grad(x);
  double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  double worst = 0.0;
  Eigen::VectorXd xp = x, xm = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double step = 1e-6 * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + step;
    xm[i] = x[i] - step;
    double fd = (value(xp) - value(xm)) / (2.0 * step);
    double mi = mass.size() ? mass[i] : 1.0;
    worst = std::max(worst, std::abs(mi * g[i] - fd) / scale);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return worst;
}

double adjoint_fd_error(const std::function<Eigen::VectorXd(const Eigen::VectorXd &)> &value,
                        const std::function<Eigen::VectorXd(const Eigen::VectorXd &, const Eigen::VectorXd &)> &adjoint,
                        const Eigen::VectorXd &x, int trials, unsigned seed, const Eigen::VectorXd &mass) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Index n = x.size();
  Eigen::Index m = value(x).size();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd v(n), w(m);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
    for (Eigen::Index j = 0; j < m; ++j) w[j] = normal(rng);
    double step = 1e-6;
    Eigen::VectorXd jv = (value(x + step * v) - value(x - step * v)) / (2.0 * step);
    Eigen::VectorXd av = adjoint(x, w);
    double lhs = jv.dot(w);
    double rhs = mass.size() ? av.cwiseProduct(mass).dot(v) : av.dot(v);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return worst;
}

} // namespace nonlip
