#include "nonlip/subsolver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace nonlip {

void SubproblemSpec::validate() const {
  if (smooth.n <= 0 || !smooth.value || !smooth.grad)
    throw std::invalid_argument("subproblem: smooth part must carry n, value and grad");
  if (q) {
    q->validate();
    if (q->weights.size() != smooth.n) throw std::invalid_argument("subproblem: q weight size mismatch");
  }
  box.validate();
  if (box.dim() != smooth.n) throw std::invalid_argument("subproblem: box dimension mismatch");
  if (mass.size() != 0 && mass.size() != smooth.n) throw std::invalid_argument("subproblem: mass size mismatch");
}

Eigen::VectorXd SubproblemSpec::mass_or_ones() const {
  return mass.size() ? mass : Eigen::VectorXd::Ones(smooth.n);
}

double SubproblemSpec::weighted_norm(const Eigen::VectorXd &v) const {
  if (mass.size() == 0) return v.norm();
  return std::sqrt(v.cwiseProduct(v).dot(mass));
}

double SubproblemSpec::value(const Eigen::VectorXd &x) const {
  return smooth.value(x) + (q ? q->value(x) : 0.0);
}

SubproblemSpec penalty_subproblem(const ProblemSpec &P, const Eigen::VectorXd &u, double theta) {
  if (!P.G) throw std::invalid_argument("penalty subproblem: problem has no constraint map");
  if (!(theta > 0.0)) throw std::invalid_argument("penalty subproblem: theta must be positive");
  SubproblemSpec S;
  S.smooth.n = P.n();
  Eigen::VectorXd uc = u;
  const SmoothFunctional &f = P.f;
  const SmoothMap &G = *P.G;
  const ConvexSetDescriptor &K = *P.K;
  S.smooth.value = [&f, &G, &K, uc, theta](const Eigen::VectorXd &x) {
    Eigen::VectorXd z = G.value(x) + uc / theta;
    return f.value(x) + 0.5 * theta * (z - project(K, z)).squaredNorm();
  };
  S.smooth.grad = [&f, &G, &K, uc, theta](const Eigen::VectorXd &x) {
    Eigen::VectorXd z = G.value(x) + uc / theta;
    return (f.grad(x) + theta * G.adjoint(x, z - project(K, z))).eval();
  };
  S.q = P.q;
  S.box = P.C;
  S.mass = P.mass;
  return S;
}

SubproblemSpec infeasibility_subproblem(const ProblemSpec &P) {
  if (!P.G) throw std::invalid_argument("infeasibility subproblem: problem has no constraint map");
  SubproblemSpec S;
  S.smooth.n = P.n();
  const SmoothMap &G = *P.G;
  const ConvexSetDescriptor &K = *P.K;
  S.smooth.value = [&G, &K](const Eigen::VectorXd &x) { return 0.5 * dist_and_distsq(K, G.value(x)).distsq; };
  S.smooth.grad = [&G, &K](const Eigen::VectorXd &x) {
    Eigen::VectorXd gx = G.value(x);
    return G.adjoint(x, gx - project(K, gx)).eval();
  };
  S.box = P.C;
  S.mass = P.mass;
  return S;
}

Eigen::VectorXd prox_grad_step_from(const SubproblemSpec &S, const Eigen::VectorXd &x,
                                    const Eigen::VectorXd &grad, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("prox step: step size must be positive");
  Eigen::VectorXd v = x - t * grad;
  if (!S.q) return S.box.clamp(v);
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double mi = S.mass.size() ? S.mass[i] : 1.0;
    out[i] = prox_lp_box(v[i], t * S.q->weights[i] / mi, S.q->p, S.box.lower[i], S.box.upper[i]);
  }
  return out;
}

Eigen::VectorXd prox_grad_step(const SubproblemSpec &S, const Eigen::VectorXd &x, double t) {
  return prox_grad_step_from(S, x, S.smooth.grad(x), t);
}

double stationarity_residual(const SubproblemSpec &S, const Eigen::VectorXd &x, double t) {
  return S.weighted_norm(x - prox_grad_step(S, x, t)) / t;
}

namespace {

void require_finite(double v, const char *what, int iter) {
  if (!std::isfinite(v))
    throw std::runtime_error(std::string("proximal gradient: non-finite ") + what + " at iteration " +
                             std::to_string(iter));
}

} // namespace

PGResult solve_nonmonotone_pg(const SubproblemSpec &S, Eigen::VectorXd x0, const PGConfig &cfg) {
  S.validate();
  if (x0.size() != S.n()) throw std::invalid_argument("proximal gradient: x0 dimension mismatch");
  Eigen::VectorXd mass = S.mass_or_ones();
  auto wsq = [&](const Eigen::VectorXd &v) { return v.cwiseProduct(v).dot(mass); };

  PGResult res;
  Eigen::VectorXd x = S.box.clamp(x0);
  double fx = S.value(x);
  require_finite(fx, "objective", 0);
  Eigen::VectorXd g = S.smooth.grad(x);
  require_finite(g.cwiseAbs().maxCoeff(), "gradient", 0);

  std::deque<double> window{fx};
  double t = cfg.t0;
  bool have_bb = false;
  Eigen::VectorXd s_prev, y_prev;

  auto residual_at = [&](const Eigen::VectorXd &xc, const Eigen::VectorXd &gc) {
    return std::sqrt(wsq(xc - prox_grad_step_from(S, xc, gc, 1.0)));
  };

  res.residual = residual_at(x, g);
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    if (res.residual <= cfg.tol) {
      res.x = x;
      res.value = fx;
      res.iterations = iter;
      res.status = PGStatus::Stationary;
      return res;
    }
    if (have_bb) {
      double sy = s_prev.cwiseProduct(y_prev).dot(mass);
      double ss = wsq(s_prev);
      t = (sy > 0.0) ? std::clamp(ss / sy, cfg.bb_min, cfg.bb_max) : std::clamp(t / cfg.backtrack, cfg.bb_min, cfg.bb_max);
    }
    double fmax = *std::max_element(window.begin(), window.end());
    Eigen::VectorXd xn;
    double fn = 0.0;
    int bt = 0;
    for (;; ++bt) {
      if (bt > cfg.max_backtracks)
        throw std::runtime_error("proximal gradient: backtracking failed at iteration " + std::to_string(iter));
      xn = prox_grad_step_from(S, x, g, t);
      fn = S.value(xn);
      if (std::isfinite(fn) && fn <= fmax - (cfg.armijo / (2.0 * t)) * wsq(xn - x)) break;
      t *= cfg.backtrack;
    }
    Eigen::VectorXd gn = S.smooth.grad(xn);
    require_finite(gn.cwiseAbs().maxCoeff(), "gradient", iter + 1);
    s_prev = xn - x;
    y_prev = gn - g;
    have_bb = true;
    x = std::move(xn);
    fx = fn;
    g = std::move(gn);
    window.push_back(fx);
    if (static_cast<int>(window.size()) > cfg.memory) window.pop_front();
    res.residual = residual_at(x, g);
  }
  res.x = x;
  res.value = fx;
  res.iterations = cfg.max_iterations;
  res.status = (res.residual <= cfg.tol) ? PGStatus::Stationary : PGStatus::IterLimit;
  return res;
}

BruteForceResult brute_force_global(const SubproblemSpec &S, const BoxSet &bounds, double h) {
  S.validate();
  bounds.validate();
  if (bounds.dim() != S.n()) throw std::invalid_argument("brute force: bounds dimension mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("brute force: spacing must be positive");
  Eigen::Index n = S.n();
  if (n > 3) throw std::invalid_argument("brute force: only n <= 3 is supported");

  // effective search box = bounds ∩ C, must be bounded
  Eigen::VectorXd lo = bounds.lower.cwiseMax(S.box.lower);
  Eigen::VectorXd hi = bounds.upper.cwiseMin(S.box.upper);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::isfinite(lo[i]) && std::isfinite(hi[i]) && lo[i] <= hi[i]))
      throw std::invalid_argument("brute force: search box must be bounded and nonempty");
  }

  // size gate before any axis is materialized (floor(span/h)+5 bounds the
  // node count per dimension, endpoints and zero snapping included)
  double estimated = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    estimated *= std::floor((hi[i] - lo[i]) / h) + 5.0;
    if (estimated > 10'000'000.0) throw std::invalid_argument("brute force: grid exceeds 1e7 points");
  }

  // per-dimension grids snapped so 0 is a node when it lies inside
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(n));
  std::int64_t total = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    auto &ax = axes[static_cast<std::size_t>(i)];
    if (lo[i] < 0.0 && 0.0 < hi[i]) {
      for (double t = 0.0; t >= lo[i]; t -= h) ax.push_back(t);
      std::reverse(ax.begin(), ax.end());
      for (double t = h; t <= hi[i]; t += h) ax.push_back(t);
    } else {
      for (double t = lo[i]; t <= hi[i]; t += h) ax.push_back(t);
    }
    if (ax.empty() || ax.front() > lo[i]) ax.insert(ax.begin(), lo[i]);
    if (ax.back() < hi[i]) ax.push_back(hi[i]);
    total *= static_cast<std::int64_t>(ax.size());
    if (total > 10'000'000) throw std::invalid_argument("brute force: grid exceeds 1e7 points");
  }

  BruteForceResult out;
  out.x = Eigen::VectorXd::Zero(n);
  out.value = kInf;
  Eigen::VectorXd pt(n);
  double grad_sup = 0.0;
  std::int64_t sampled = 0;
  std::int64_t grad_stride = std::max<std::int64_t>(1, total / 4096);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  auto visit = [&](const Eigen::VectorXd &z) {
    double v = S.value(z);
    ++out.points;
    if (v < out.value) {
      out.value = v;
      out.x = z;
    }
    if (out.points % grad_stride == 0) {
      grad_sup = std::max(grad_sup, S.smooth.grad(z).norm());
      ++sampled;
    }
  };
  for (;;) {
    for (Eigen::Index i = 0; i < n; ++i) pt[i] = axes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
    visit(pt);
    Eigen::Index d = 0;
    while (d < n) {
      if (++idx[static_cast<std::size_t>(d)] < axes[static_cast<std::size_t>(d)].size()) break;
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == n) break;
  }

  // cells adjacent to a zero hyperplane get one extra half-spacing sweep:
  // the |·|ᵖ modulus is worst there
  for (Eigen::Index zd = 0; zd < n; ++zd) {
    if (!(lo[zd] < 0.0 && 0.0 < hi[zd]) || S.n() == 0) continue;
    std::vector<double> half;
    if (-0.5 * h >= lo[zd]) half.push_back(-0.5 * h);
    if (0.5 * h <= hi[zd]) half.push_back(0.5 * h);
    if (half.empty()) continue;
    std::vector<std::size_t> jdx(static_cast<std::size_t>(n), 0);
    for (;;) {
      bool carry = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (i == zd) continue;
        pt[i] = axes[static_cast<std::size_t>(i)][jdx[static_cast<std::size_t>(i)]];
      }
      for (double hv : half) {
        pt[zd] = hv;
        visit(pt);
      }
      Eigen::Index d = 0;
      while (d < n) {
        if (d == zd) {
          ++d;
          continue;
        }
        if (++jdx[static_cast<std::size_t>(d)] < axes[static_cast<std::size_t>(d)].size()) break;
        jdx[static_cast<std::size_t>(d)] = 0;
        ++d;
      }
      if (d >= n) {
        carry = true;
      }
      if (carry) break;
    }
  }

  if (sampled == 0) grad_sup = S.smooth.grad(out.x).norm();
  double qslack = 0.0;
  if (S.q) qslack = S.q->weights.sum() * std::pow(0.5 * h, S.q->p);
  out.eps_bound = grad_sup * 0.5 * h * std::sqrt(static_cast<double>(n)) + qslack;
  return out;
}

} // namespace nonlip
