#include "nonlip/stationarity.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nonlip/detail/lp.hpp"

namespace nonlip {

namespace {

double rel_tol(double base, double scale) { return base * std::max(1.0, std::abs(scale)); }

// Active-set classification of a box at tolerance; returns one normal-cone
// interval per coordinate. Unlike box_normal_cone this tolerates points that
// are feasible only up to `tol`.
std::vector<Interval> classified_box_cone(const BoxSet &box, const Eigen::VectorXd &x, double tol) {
  std::vector<Interval> out(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    bool at_lo = x[i] <= box.lower[i] + rel_tol(tol, box.lower[i]);
    bool at_hi = x[i] >= box.upper[i] - rel_tol(tol, box.upper[i]);
    if (at_lo && at_hi) out[i] = Interval::all();
    else if (at_lo) out[i] = Interval::nonpos();
    else if (at_hi) out[i] = Interval::nonneg();
    else out[i] = Interval::zero();
  }
  return out;
}

bool box_contains_tol(const BoxSet &box, const Eigen::VectorXd &x, double tol) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < box.lower[i] - rel_tol(tol, box.lower[i])) return false;
    if (x[i] > box.upper[i] + rel_tol(tol, box.upper[i])) return false;
  }
  return true;
}

// Normal cone of K at (the projection of) g, classifying active components at
// tolerance `tol` instead of exactly.
NormalCone classified_cone(const ConvexSetDescriptor &K, const Eigen::VectorXd &g, double tol) {
  NormalCone cone;
  if (const auto *b = std::get_if<BoxSet>(&K)) {
    cone.intervals = classified_box_cone(*b, g, tol);
    return cone;
  }
  if (std::holds_alternative<NonpositiveOrthant>(K)) {
    cone.intervals.resize(static_cast<std::size_t>(g.size()));
    for (Eigen::Index i = 0; i < g.size(); ++i)
      cone.intervals[static_cast<std::size_t>(i)] = (g[i] >= -tol) ? Interval::nonneg() : Interval::zero();
    return cone;
  }
  if (std::holds_alternative<ZeroSet>(K)) {
    cone.intervals.assign(static_cast<std::size_t>(g.size()), Interval::all());
    return cone;
  }
  return normal_cone(K, project(K, g), std::max(tol, 1e-12));
}

bool cone_contains(const NormalCone &cone, const Eigen::VectorXd &lambda, double tol) {
  if (cone.kind == NormalCone::Kind::Product) {
    for (std::size_t i = 0; i < cone.intervals.size(); ++i) {
      double v = lambda[static_cast<Eigen::Index>(i)];
      if (!cone.intervals[i].contains(v, rel_tol(tol, v))) return false;
    }
    return true;
  }
  double dn = cone.direction.norm();
  double ln = lambda.norm();
  if (dn == 0.0) return ln <= tol;
  if (ln == 0.0) return true;
  double s = lambda.dot(cone.direction) / (dn * dn);
  if (s < -rel_tol(tol, s)) return false;
  return (lambda - s * cone.direction).norm() <= tol * std::max(1.0, ln);
}

// ∂q(x)ᵢ as a Riesz representative: the plain subgradient divided by the mass
// weight (sign cones are unaffected, singletons rescale).
Interval subdiff_interval_riesz(const ProblemSpec &P, const Eigen::VectorXd &x, const Eigen::VectorXd &mass,
                                Eigen::Index i) {
  if (!P.q) return Interval::zero();
  SubdiffValue s = lp_subdiff_point(x[i], P.q->weights[i], P.q->p);
  if (s.all_reals) return Interval::all();
  double v = s.value / mass[i];
  return Interval{v, v};
}

Interval shift_interval(const Interval &I, double c) {
  Interval out;
  out.lo = std::isinf(I.lo) ? I.lo : I.lo + c;
  out.hi = std::isinf(I.hi) ? I.hi : I.hi + c;
  return out;
}

Eigen::MatrixXd adjoint_matrix(const ProblemSpec &P, const Eigen::VectorXd &x) {
  const Eigen::Index n = P.n(), m = P.m();
  Eigen::MatrixXd M(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[j] = 1.0;
    M.col(j) = P.G->adjoint(x, e);
  }
  return M;
}

// min over λ in the product cone of φ(λ) = Σⱼ mⱼ·dist²(−(r0 + Mλ)ⱼ, Iⱼ) by
// projected gradient with the fixed step 1/L, L = 2‖Mᵀdiag(m)M‖. Every
// threshold is relative, so the iterates scale exactly with r0.
Eigen::VectorXd min_residual_lambda(const Eigen::MatrixXd &M, const Eigen::VectorXd &r0,
                                    const Eigen::VectorXd &mass, const std::vector<Interval> &I,
                                    const std::vector<Interval> &cone) {
  const Eigen::Index n = M.rows(), m = M.cols();
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);

  bool ls_applicable = true;
  for (const Interval &ci : cone)
    if (!(std::isinf(ci.lo) && std::isinf(ci.hi))) ls_applicable = false;
  Eigen::VectorXd center(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Interval &Ii = I[static_cast<std::size_t>(i)];
    if (Ii.lo != Ii.hi) ls_applicable = false;
    center[i] = std::isfinite(Ii.lo) ? Ii.lo : 0.0;
  }
  if (ls_applicable) {
    // Unconstrained weighted least squares: min ‖√m ⊙ (Mλ + r0 + c)‖.
    Eigen::VectorXd sq = mass.cwiseSqrt();
    Eigen::MatrixXd A = sq.asDiagonal() * M;
    Eigen::VectorXd b = -(sq.asDiagonal() * (r0 + center));
    return A.colPivHouseholderQr().solve(b);
  }

  Eigen::MatrixXd gram = M.transpose() * mass.asDiagonal() * M;
  double L = 2.0 * gram.norm();
  if (L == 0.0) return lambda;
  double step = 1.0 / L;

  auto clamp_cone = [&](Eigen::VectorXd v) {
    for (Eigen::Index j = 0; j < m; ++j) v[j] = cone[static_cast<std::size_t>(j)].project(v[j]);
    return v;
  };

  double first_move = 0.0;
  for (int iter = 0; iter < 5000; ++iter) {
    Eigen::VectorXd a = -(r0 + M * lambda);
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 0; i < n; ++i) d[i] = a[i] - I[static_cast<std::size_t>(i)].project(a[i]);
    Eigen::VectorXd grad = -2.0 * (M.transpose() * mass.cwiseProduct(d).eval());
    Eigen::VectorXd next = clamp_cone(lambda - step * grad);
    double move = (next - lambda).norm();
    if (iter == 0) first_move = move;
    lambda = next;
    if (move <= 1e-13 * std::max(first_move, lambda.norm())) break;
  }
  return lambda;
}

} // namespace

MStatCertificate m_stat_residual(const ProblemSpec &P, const Eigen::VectorXd &x, const Eigen::VectorXd &lambda,
                                 const Eigen::VectorXd &mu, const Eigen::VectorXd &xi, double class_tol) {
  P.validate();
  const Eigen::Index n = P.n(), m = P.m();
  if (x.size() != n || mu.size() != n || xi.size() != n)
    throw std::invalid_argument("m_stat_residual: vector of wrong length");
  if (lambda.size() != m) throw std::invalid_argument("m_stat_residual: lambda of wrong length");

  MStatCertificate cert;
  cert.x = x;
  cert.lambda = lambda;
  cert.mu = mu;
  cert.xi = xi;

  Eigen::VectorXd mass = P.mass_or_ones();
  Eigen::VectorXd r = P.f.grad(x) + xi + mu;
  if (P.constrained()) r += P.G->adjoint(x, lambda);
  cert.residual = P.weighted_norm(r);

  cert.x_in_C = box_contains_tol(P.C, x, class_tol);

  if (P.constrained()) {
    Eigen::VectorXd gx = P.G->value(x);
    cert.gx_in_K = dist_and_distsq(*P.K, gx).dist <= rel_tol(class_tol, gx.cwiseAbs().maxCoeff());
    cert.lambda_in_cone = cone_contains(classified_cone(*P.K, gx, class_tol), lambda, 1e-12);
  } else {
    cert.gx_in_K = true;
    cert.lambda_in_cone = true;
  }

  std::vector<Interval> nc = classified_box_cone(P.C, x, class_tol);
  cert.mu_in_cone = true;
  cert.xi_in_subdiff = true;
  cert.component_verdicts.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Interval &ci = nc[static_cast<std::size_t>(i)];
    bool mu_ok = ci.contains(mu[i], rel_tol(1e-12, mu[i]));

    bool xi_ok = true;
    std::string qpart;
    if (P.q) {
      Interval si = subdiff_interval_riesz(P, x, mass, i);
      if (std::isinf(si.lo)) {
        qpart = "|subdiff:kink";
      } else {
        qpart = "|subdiff:point";
        xi_ok = std::abs(xi[i] - si.lo) <= rel_tol(1e-12, si.lo);
      }
    } else {
      xi_ok = xi[i] == 0.0;
    }
    cert.mu_in_cone = cert.mu_in_cone && mu_ok;
    cert.xi_in_subdiff = cert.xi_in_subdiff && xi_ok;

    std::string base = std::isinf(ci.lo) && std::isinf(ci.hi) ? "fixed"
                       : ci.lo == 0.0 && ci.hi == 0.0        ? "interior"
                       : std::isinf(ci.hi)                   ? "at-upper"
                                                             : "at-lower";
    std::ostringstream os;
    os << base << qpart << "|mu:" << (mu_ok ? "ok" : "bad");
    if (P.q) os << "|xi:" << (xi_ok ? "ok" : "bad");
    cert.component_verdicts[static_cast<std::size_t>(i)] = os.str();
  }
  return cert;
}

MinResidualResult m_stat_min_residual(const ProblemSpec &P, const Eigen::VectorXd &x, double tol_feas) {
  P.validate();
  const Eigen::Index n = P.n(), m = P.m();
  if (x.size() != n) throw std::invalid_argument("m_stat_min_residual: x of wrong length");
  if (!box_contains_tol(P.C, x, tol_feas)) throw std::invalid_argument("m_stat_min_residual: x not in C");

  Eigen::VectorXd mass = P.mass_or_ones();
  Eigen::VectorXd r0 = P.f.grad(x);

  // Iᵢ = N_C(x)ᵢ ⊕ ∂q(x)ᵢ, both in the Riesz convention.
  std::vector<Interval> nc = classified_box_cone(P.C, x, tol_feas);
  std::vector<Interval> I(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Interval si = subdiff_interval_riesz(P, x, mass, i);
    const Interval &ci = nc[static_cast<std::size_t>(i)];
    if (std::isinf(si.lo) || (std::isinf(ci.lo) && std::isinf(ci.hi))) I[static_cast<std::size_t>(i)] = Interval::all();
    else I[static_cast<std::size_t>(i)] = shift_interval(ci, si.lo);
  }

  MinResidualResult out;
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd M(n, 0);

  if (P.constrained()) {
    Eigen::VectorXd gx = P.G->value(x);
    if (dist_and_distsq(*P.K, gx).dist > rel_tol(tol_feas, gx.cwiseAbs().maxCoeff()))
      throw std::invalid_argument("m_stat_min_residual: G(x) not in K");
    M = adjoint_matrix(P, x);
    NormalCone cone = classified_cone(*P.K, gx, tol_feas);
    if (cone.kind == NormalCone::Kind::Product) {
      lambda = min_residual_lambda(M, r0, mass, I, cone.intervals);
    } else if (cone.direction.norm() > 0.0) {
      Eigen::MatrixXd Mray = M * cone.direction;
      std::vector<Interval> ray_cone{Interval::nonneg()};
      Eigen::VectorXd s = min_residual_lambda(Mray, r0, mass, I, ray_cone);
      lambda = s[0] * cone.direction;
    }
  }

  Eigen::VectorXd a = -(r0 + (P.constrained() ? Eigen::VectorXd(M * lambda) : Eigen::VectorXd(Eigen::VectorXd::Zero(n))));
  Eigen::VectorXd z(n), mu(n), xi(n);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    z[i] = I[static_cast<std::size_t>(i)].project(a[i]);
    double d = z[i] - a[i];
    acc += mass[i] * d * d;
    if (P.q) {
      Interval si = subdiff_interval_riesz(P, x, mass, i);
      if (std::isinf(si.lo)) {
        xi[i] = z[i];
        mu[i] = 0.0;
      } else {
        xi[i] = si.lo;
        mu[i] = z[i] - xi[i];
      }
    } else {
      xi[i] = 0.0;
      mu[i] = z[i];
    }
  }
  out.residual = std::sqrt(acc);
  out.lambda = lambda;
  out.mu = mu;
  out.xi = xi;
  return out;
}

ApproxStatReport approx_stat_check(const ProblemSpec &P, const std::vector<SeqEntry> &seq,
                                   const Eigen::VectorXd &xbar) {
  P.validate();
  const Eigen::Index n = P.n(), m = P.m();
  if (xbar.size() != n) throw std::invalid_argument("approx_stat_check: xbar of wrong length");

  Eigen::VectorXd mass = P.mass_or_ones();
  ApproxStatReport report;
  report.entries.reserve(seq.size());

  for (const SeqEntry &e : seq) {
    if (e.x.size() != n || e.x1.size() != n || e.x2.size() != n || e.xi.size() != n || e.mu.size() != n ||
        e.eta.size() != n || e.lambda.size() != m || e.y.size() != m)
      throw std::invalid_argument("approx_stat_check: entry of wrong length");

    SeqEntryReport r;

    if (P.constrained()) {
      Eigen::VectorXd arg = P.G->value(e.x1) - e.y;
      try {
        r.lambda_in_cone = in_normal_cone(*P.K, arg, e.lambda);
      } catch (const std::invalid_argument &) {
        r.lambda_in_cone = false; // argument left K entirely
      }
    } else {
      r.lambda_in_cone = true;
    }

    r.mu_in_cone = true;
    try {
      std::vector<Interval> nc = box_normal_cone(P.C, e.x2);
      for (Eigen::Index i = 0; i < n; ++i)
        if (!nc[static_cast<std::size_t>(i)].contains(e.mu[i], rel_tol(1e-12, e.mu[i]))) r.mu_in_cone = false;
    } catch (const std::invalid_argument &) {
      r.mu_in_cone = false;
    }

    r.xi_in_subdiff = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      Interval si = subdiff_interval_riesz(P, e.x, mass, i);
      if (std::isinf(si.lo)) continue;
      if (std::abs(e.xi[i] - si.lo) > rel_tol(1e-12, si.lo)) r.xi_in_subdiff = false;
    }

    Eigen::VectorXd eta_hat = P.f.grad(e.x) + e.xi + e.mu;
    if (P.constrained()) eta_hat += P.G->adjoint(e.x1, e.lambda);
    double eta_scale = eta_hat.size() ? eta_hat.cwiseAbs().maxCoeff() : 0.0;
    r.eta_identity = (e.eta - eta_hat).cwiseAbs().maxCoeff() <= rel_tol(1e-12, eta_scale);

    double qbar = P.q ? P.q->value(xbar) : 0.0;
    double qx = P.q ? P.q->value(e.x) : 0.0;
    r.eps = std::max({P.weighted_norm(e.eta), P.weighted_norm(e.x - xbar), P.weighted_norm(e.x1 - xbar),
                      P.weighted_norm(e.x2 - xbar), e.y.norm(), std::abs(qx - qbar)});
    r.eps_matches = std::isnan(e.eps) || std::abs(e.eps - r.eps) <= rel_tol(1e-12, r.eps);

    report.entries.push_back(r);
  }

  report.all_ok = !report.entries.empty();
  for (const SeqEntryReport &r : report.entries) report.all_ok = report.all_ok && r.ok();
  report.eps_final = report.entries.empty() ? 0.0 : report.entries.back().eps;
  return report;
}

SeqEntry degenerate_parabola_entry(int k) {
  if (k < 1) throw std::invalid_argument("degenerate_parabola_entry: k must be positive");
  double kk = static_cast<double>(k);
  SeqEntry e;
  e.x = Eigen::VectorXd::Zero(1);
  e.x2 = Eigen::VectorXd::Zero(1);
  e.x1 = Eigen::VectorXd::Constant(1, -1.0 / (2.0 * kk));
  // yₖ reuses the map's own expression so G(x'ₖ) − yₖ vanishes bitwise.
  e.y = Eigen::VectorXd::Constant(1, e.x1[0] * e.x1[0]);
  e.lambda = Eigen::VectorXd::Constant(1, kk);
  e.xi = Eigen::VectorXd::Zero(1);
  e.mu = Eigen::VectorXd::Zero(1);
  e.eta = Eigen::VectorXd::Zero(1);
  e.eps = 1.0 / (2.0 * kk);
  return e;
}

SeqEntry assemble_alm_entry(const ProblemSpec &P, const AlmIterate &it) {
  P.validate();
  const Eigen::Index n = P.n();
  if (it.x.size() != n) throw std::invalid_argument("assemble_alm_entry: iterate of wrong length");

  SubproblemSpec S;
  if (P.constrained()) {
    if (it.u.size() != P.m()) throw std::invalid_argument("assemble_alm_entry: safeguard of wrong length");
    if (!(it.theta > 0)) throw std::invalid_argument("assemble_alm_entry: theta must be positive");
    S = penalty_subproblem(P, it.u, it.theta);
  } else {
    S = SubproblemSpec{P.f, P.q, P.C, P.mass};
  }

  Eigen::VectorXd mass = P.mass_or_ones();
  Eigen::VectorXd g = S.smooth.grad(it.x);
  Eigen::VectorXd xhat = prox_grad_step_from(S, it.x, g, 1.0);
  Eigen::VectorXd total = (it.x - g) - xhat; // ∈ ∂(q + δ_C)(x̂) in the Riesz sense

  SeqEntry e;
  e.x = e.x1 = e.x2 = xhat;
  e.xi.resize(n);
  e.mu.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (P.q && xhat[i] == 0.0) {
      e.xi[i] = total[i];
      e.mu[i] = 0.0;
    } else if (P.q) {
      e.xi[i] = lp_subdiff_point(xhat[i], P.q->weights[i], P.q->p).value / mass[i];
      e.mu[i] = total[i] - e.xi[i];
    } else {
      e.xi[i] = 0.0;
      e.mu[i] = total[i];
    }
  }

  if (P.constrained()) {
    Eigen::VectorXd gx = P.G->value(xhat);
    Eigen::VectorXd z = gx + it.u / it.theta;
    Eigen::VectorXd pz = project(*P.K, z);
    e.lambda = it.theta * (z - pz);
    e.y = gx - pz;
    e.eta = P.f.grad(xhat) + e.xi + P.G->adjoint(xhat, e.lambda) + e.mu;
  } else {
    e.lambda.resize(0);
    e.y.resize(0);
    e.eta = P.f.grad(xhat) + e.xi + e.mu;
  }
  return e;
}

const char *to_string(QualVerdict v) {
  switch (v) {
    case QualVerdict::Holds: return "Holds";
    case QualVerdict::Fails: return "Fails";
    case QualVerdict::Unsupported: return "Unsupported";
  }
  return "Unsupported";
}

QualReport gmfcq_check(const ProblemSpec &P, const Eigen::VectorXd &x) {
  P.validate();
  const Eigen::Index n = P.n(), m = P.m();
  if (x.size() != n) throw std::invalid_argument("gmfcq_check: x of wrong length");

  QualReport report;
  if (!P.constrained()) {
    report.verdict = QualVerdict::Holds;
    report.note = "no constraint map, the condition is vacuous";
    return report;
  }
  if (m > 10) {
    report.verdict = QualVerdict::Unsupported;
    report.note = "constraint dimension exceeds the slice-enumeration limit of 10";
    return report;
  }
  if (std::holds_alternative<Ball>(*P.K) || std::holds_alternative<Halfspace>(*P.K)) {
    report.verdict = QualVerdict::Unsupported;
    report.note = "only product cones (Box, NonpositiveOrthant, ZeroSet) are supported";
    return report;
  }

  const double tol = 1e-9;
  if (!box_contains_tol(P.C, x, tol)) throw std::invalid_argument("gmfcq_check: x not in C");
  Eigen::VectorXd gx = P.G->value(x);
  if (dist_and_distsq(*P.K, gx).dist > rel_tol(tol, gx.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("gmfcq_check: G(x) not in K");

  NormalCone cone = classified_cone(*P.K, gx, tol);
  Eigen::MatrixXd M = adjoint_matrix(P, x);
  std::vector<Interval> nc = classified_box_cone(P.C, x, tol);

  // Rows encoding −(G'(x)*λ)ⱼ ∈ N_C(x)ⱼ.
  std::vector<Eigen::VectorXd> rows;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Interval &cj = nc[static_cast<std::size_t>(j)];
    bool lo_inf = std::isinf(cj.lo), hi_inf = std::isinf(cj.hi);
    if (lo_inf && hi_inf) continue;                       // N_C = ℝ, no restriction
    if (!lo_inf && !hi_inf) {                             // N_C = {0}: (Mλ)ⱼ = 0
      rows.push_back(M.row(j).transpose());
      rows.push_back(-M.row(j).transpose());
    } else if (lo_inf) {                                  // N_C = (−∞,0]: (Mλ)ⱼ ≥ 0
      rows.push_back(-M.row(j).transpose());
    } else {                                              // N_C = [0,∞): (Mλ)ⱼ ≤ 0
      rows.push_back(M.row(j).transpose());
    }
  }
  Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), m);
  for (std::size_t r = 0; r < rows.size(); ++r) A.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());

  Eigen::VectorXd lo(m), hi(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Interval &ci = cone.intervals[static_cast<std::size_t>(i)];
    lo[i] = std::max(ci.lo, -1.0);
    hi[i] = std::min(ci.hi, 1.0);
  }

  double row_scale = 1.0 + (A.size() > 0 ? A.cwiseAbs().maxCoeff() : 0.0);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (double s : {1.0, -1.0}) {
      if (s < lo[i] || s > hi[i]) continue;
      Eigen::VectorXd slo = lo, shi = hi;
      slo[i] = shi[i] = s;
      auto cand = detail::lp_feasible_point(A, b, slo, shi);
      if (!cand) continue;
      Eigen::VectorXd w = *cand;
      for (Eigen::Index j = 0; j < m; ++j)
        w[j] = std::min(hi[j], std::max(lo[j], cone.intervals[static_cast<std::size_t>(j)].project(w[j])));
      w[i] = s;
      if (A.rows() > 0 && (A * w).maxCoeff() > 1e-8 * row_scale) continue;
      report.verdict = QualVerdict::Fails;
      report.witness = w;
      std::ostringstream os;
      os << "nonzero multiplier with component " << i << " pinned to " << s;
      report.note = os.str();
      return report;
    }
  }
  report.verdict = QualVerdict::Holds;
  report.note = "all slice programs are infeasible";
  return report;
}

} // namespace nonlip
