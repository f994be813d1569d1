#include "nonlip/variational_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace nonlip::lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Golden-section refinement of a 1D function around a bracketing interval.
double golden_min(const std::function<double(double)> &f, double lo, double hi, int iters) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-13; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

Vec2 project_thinning(const Vec2 &z) {
  double ax = z.x(), ay = std::abs(z.y());
  double sy = z.y() < 0.0 ? -1.0 : 1.0;
  if (ax >= 0.0 && ay >= std::exp(-ax)) return z;
  if (z.x() == 0.0 && z.y() == 0.0) return z;

  Vec2 best(0.0, 0.0);
  double best_d2 = ax * ax + ay * ay; // the isolated origin

  Vec2 edge(0.0, std::max(ay, 1.0)); // left edge {0} × [1, ∞) on this side
  double edge_d2 = ax * ax + (ay - edge.y()) * (ay - edge.y());
  if (edge_d2 < best_d2) {
    best_d2 = edge_d2;
    best = edge;
  }

  // Boundary curve (s, e^{−s}), s ≥ 0: coarse sweep, then golden refinement.
  auto curve_d2 = [&](double s) {
    double dy = ay - std::exp(-s);
    double dx = ax - s;
    return dx * dx + dy * dy;
  };
  double smax = std::max(ax, 0.0) + 6.0;
  const int samples = 512;
  double step = smax / samples;
  double s_best = 0.0, f_best = curve_d2(0.0);
  for (int i = 1; i <= samples; ++i) {
    double s = i * step;
    double v = curve_d2(s);
    if (v < f_best) {
      f_best = v;
      s_best = s;
    }
  }
  double s_ref = golden_min(curve_d2, std::max(0.0, s_best - step), s_best + step, 120);
  if (curve_d2(s_ref) > f_best) s_ref = s_best;
  double d2 = curve_d2(s_ref);
  if (d2 < best_d2) best = Vec2(s_ref, std::exp(-s_ref));

  best.y() *= sy;
  return best;
}

double ray_cone_dist(const Vec2 &v, const Vec2 &dir) {
  double s = std::max(0.0, v.dot(dir) / dir.squaredNorm());
  return (v - s * dir).norm();
}

} // namespace

std::string describe(const ImplicitSet2D &S) {
  std::ostringstream os;
  if (const auto *h = std::get_if<Halfline>(&S)) {
    os << "halfline from (" << h->base.x() << ", " << h->base.y() << ") along (" << h->dir.x() << ", "
       << h->dir.y() << ")";
  } else if (std::holds_alternative<ThinningRegion>(S)) {
    os << "thinning region {x >= 0, |y| >= exp(-x)} with the origin attached";
  } else if (std::holds_alternative<KinkedUnion>(S)) {
    os << "union of halfplanes {max(y, x + y) >= 0}";
  } else if (std::holds_alternative<LowerHalfplane>(S)) {
    os << "lower halfplane {y <= 0}";
  } else {
    const auto &d = std::get<Disk>(S);
    os << "disk of radius " << d.radius << " at (" << d.center.x() << ", " << d.center.y() << ")";
  }
  return os.str();
}

bool contains(const ImplicitSet2D &S, const Vec2 &z, double tol) {
  if (const auto *h = std::get_if<Halfline>(&S)) {
    Vec2 d = h->dir.normalized();
    double s = std::max(0.0, (z - h->base).dot(d));
    return (z - (h->base + s * d)).norm() <= tol;
  }
  if (std::holds_alternative<ThinningRegion>(S)) {
    if (z.norm() <= tol) return true;
    return z.x() >= -tol && std::abs(z.y()) >= std::exp(-z.x()) - tol;
  }
  if (std::holds_alternative<KinkedUnion>(S)) return std::max(z.y(), z.x() + z.y()) >= -tol;
  if (std::holds_alternative<LowerHalfplane>(S)) return z.y() <= tol;
  const auto &d = std::get<Disk>(S);
  return (z - d.center).norm() <= d.radius + tol;
}

Vec2 project(const ImplicitSet2D &S, const Vec2 &z) {
  if (const auto *h = std::get_if<Halfline>(&S)) {
    Vec2 d = h->dir.normalized();
    double s = std::max(0.0, (z - h->base).dot(d));
    return h->base + s * d;
  }
  if (std::holds_alternative<ThinningRegion>(S)) return project_thinning(z);
  if (std::holds_alternative<KinkedUnion>(S)) {
    if (std::max(z.y(), z.x() + z.y()) >= 0.0) return z;
    Vec2 flat(z.x(), 0.0);
    double excess = (z.x() + z.y()) / 2.0;
    Vec2 slant(z.x() - excess, z.y() - excess);
    return (z - flat).squaredNorm() <= (z - slant).squaredNorm() ? flat : slant;
  }
  if (std::holds_alternative<LowerHalfplane>(S)) return Vec2(z.x(), std::min(z.y(), 0.0));
  const auto &dsk = std::get<Disk>(S);
  Vec2 d = z - dsk.center;
  double r = d.norm();
  if (r <= dsk.radius) return z;
  return dsk.center + (dsk.radius / r) * d;
}

double dist(const ImplicitSet2D &S, const Vec2 &z) { return (z - project(S, z)).norm(); }

GapResult enlargement_gap(const ImplicitSet2D &A, const ImplicitSet2D &B, const Vec2 &a, double rho,
                          const Window &window, int resolution, int levels) {
  if (!(rho > 0.0)) throw std::invalid_argument("enlargement_gap: rho must be positive");
  if (!(window.x_lo < window.x_hi && window.y_lo < window.y_hi) ||
      !std::isfinite(window.x_lo + window.x_hi + window.y_lo + window.y_hi))
    throw std::invalid_argument("enlargement_gap: window must be bounded");
  if (resolution < 2 || levels < 0) throw std::invalid_argument("enlargement_gap: bad search parameters");

  GapResult out;
  out.gap = kInf;
  double min_da = kInf, min_db = kInf;
  auto eval = [&](const Vec2 &z) {
    double da = dist(A, z + a);
    double db = dist(B, z);
    ++out.evaluations;
    min_da = std::min(min_da, da);
    min_db = std::min(min_db, db);
    return std::max(da - rho, 0.0) + std::max(db - rho, 0.0);
  };

  const int nodes = resolution + 1;
  const double hx0 = (window.x_hi - window.x_lo) / resolution;
  const double hy0 = (window.y_hi - window.y_lo) / resolution;
  std::vector<double> base(static_cast<std::size_t>(nodes) * nodes);
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      Vec2 z(window.x_lo + i * hx0, window.y_lo + j * hy0);
      double g = eval(z);
      base[static_cast<std::size_t>(i) * nodes + j] = g;
      if (g < out.gap) {
        out.gap = g;
        out.z = z;
      }
    }
  }

  if (out.gap > 0.0) {
    // Distant basins can tie at the coarse level (an isolated set piece
    // against a long thin band, say), so refine a beam of well-separated
    // seeds instead of the single best node.
    std::vector<int> order(base.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int l, int r) {
      return base[l] != base[r] ? base[l] < base[r] : l < r;
    });
    std::vector<std::pair<int, int>> seeds;
    for (int k : order) {
      if (seeds.size() == 4) break;
      int i = k / nodes, j = k % nodes;
      bool apart = true;
      for (const auto &[si, sj] : seeds) apart = apart && std::max(std::abs(i - si), std::abs(j - sj)) >= 3;
      if (apart) seeds.emplace_back(i, j);
    }

    for (const auto &[si, sj] : seeds) {
      Vec2 best_z(window.x_lo + si * hx0, window.y_lo + sj * hy0);
      double best_g = base[static_cast<std::size_t>(si) * nodes + sj];
      double hx = hx0, hy = hy0;
      for (int level = 1; level <= levels && best_g > 0.0; ++level) {
        double xlo = std::max(window.x_lo, best_z.x() - 1.5 * hx);
        double xhi = std::min(window.x_hi, best_z.x() + 1.5 * hx);
        double ylo = std::max(window.y_lo, best_z.y() - 1.5 * hy);
        double yhi = std::min(window.y_hi, best_z.y() + 1.5 * hy);
        hx = (xhi - xlo) / resolution;
        hy = (yhi - ylo) / resolution;
        for (int i = 0; i < nodes; ++i) {
          for (int j = 0; j < nodes; ++j) {
            Vec2 z(xlo + i * hx, ylo + j * hy);
            double g = eval(z);
            if (g < best_g) {
              best_g = g;
              best_z = z;
            }
          }
        }
      }
      if (best_g < out.gap) {
        out.gap = best_g;
        out.z = best_z;
      }
      if (out.gap < 1e-9) break;
    }
  }

  out.witness = out.gap < 1e-9;
  out.window_warning = min_da > rho || min_db > rho;
  return out;
}

ProbeResult extremality_probe(const ImplicitSet2D &A, const ImplicitSet2D &B, double eps,
                              std::int64_t budget, const Window &window, unsigned seed) {
  if (!(eps > 0.0)) throw std::invalid_argument("extremality_probe: eps must be positive");
  if (budget < 1) throw std::invalid_argument("extremality_probe: budget must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  ProbeResult out;
  const int probe_res = 32, probe_levels = 4, ladder = 6;

  for (int trial = 0; out.evaluations < budget; ++trial) {
    Vec2 a(0.0, 0.0);
    if (trial > 0) {
      double r = 0.95 * eps * std::sqrt(unit(rng));
      double phi = 2.0 * std::numbers::pi * unit(rng);
      a = Vec2(r * std::cos(phi), r * std::sin(phi));
    }
    // Smallest rung first: the gap is nonincreasing in ρ, so a zero gap here
    // rules out the whole ladder for this translation.
    double rho = eps / std::pow(2.0, ladder);
    GapResult g = enlargement_gap(A, B, a, rho, window, probe_res, probe_levels);
    out.evaluations += g.evaluations;
    if (trial == 0 || g.gap > out.gap) {
      out.gap = g.gap;
      out.a = a;
      out.rho = rho;
    }
    if (!(g.gap > 0.0)) continue;
    // Separation found: walk up the ladder to report the largest workable ρ.
    out.witnessed = true;
    out.a = a;
    out.rho = rho;
    out.gap = g.gap;
    for (int j = ladder - 1; j >= 1; --j) {
      double rj = eps / std::pow(2.0, j);
      GapResult gj = enlargement_gap(A, B, a, rj, window, probe_res, probe_levels);
      out.evaluations += gj.evaluations;
      if (!(gj.gap > 0.0)) break;
      out.rho = rj;
      out.gap = gj.gap;
    }
    return out;
  }
  return out;
}

FamilyCheckResult separation_family_check(double t, double rho, int resolution) {
  if (!(t > 0.0) || !(rho > 0.0)) throw std::invalid_argument("separation family: t and rho must be positive");
  if (!(rho < t / 3.0)) throw std::invalid_argument("separation family: requires rho < t/3");
  if (resolution < 4) throw std::invalid_argument("separation family: resolution too small");

  const ImplicitSet2D O1 = KinkedUnion{};
  const ImplicitSet2D O2 = LowerHalfplane{};

  std::vector<Vec2> members1, members2;
  const double W = 1.0;
  double h = 2.0 * W / resolution;
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j <= resolution; ++j) {
      Vec2 z(-W + i * h, -W + j * h);
      if (dist(O1, z) <= rho) members1.push_back(z);
      if (z.x() <= 0.0 && dist(O2, z) <= rho) members2.push_back(z); // u > 0 values are +∞
    }
  }

  FamilyCheckResult out;
  out.bound = t - 3.0 * rho;
  out.min_value = kInf;
  for (const Vec2 &zu : members1) {
    for (const Vec2 &uv : members2) {
      double vx = zu.x() - uv.x();
      double vy = zu.y() - uv.y() + t;
      double val = std::hypot(vx, vy);
      ++out.samples;
      out.min_value = std::min(out.min_value, val);
    }
  }
  out.ok = out.samples > 0 && out.min_value > out.bound - 1e-9;
  return out;
}

std::array<DualConfig, 2> separation_dual_vectors(double eps) {
  if (!(eps > 0.0 && eps <= 0.1)) throw std::invalid_argument("separation duals: eps must lie in (0, 0.1]");

  const double r2 = std::sqrt(2.0) / 2.0;
  DualConfig flat;
  flat.point1 = Vec2(-eps / 2.0, 0.0);
  flat.normal1 = Vec2(0.0, -1.0);
  flat.point2 = Vec2(-eps / 2.0, 0.0);
  flat.normal2 = Vec2(0.0, 1.0);

  DualConfig slant;
  slant.point1 = Vec2(eps / 2.0, -eps / 2.0);
  slant.normal1 = Vec2(-r2, -r2);
  slant.point2 = Vec2(0.0, 0.0);
  slant.normal2 = Vec2(0.0, r2);

  // Analytic Fréchet normal cones: on the flat branch of the union the cone is
  // the ray through (0,−1); on the slanted branch the ray through (−1,−1)/√2;
  // for the lower halfplane the ray through (0,1).
  flat.cone_residual = std::max(ray_cone_dist(flat.normal1, Vec2(0.0, -1.0)),
                                ray_cone_dist(flat.normal2, Vec2(0.0, 1.0)));
  slant.cone_residual = std::max(ray_cone_dist(slant.normal1, Vec2(-r2, -r2)),
                                 ray_cone_dist(slant.normal2, Vec2(0.0, 1.0)));
  return {flat, slant};
}

double PiecewiseFn1D::value(double x) const {
  for (std::size_t i = 0; i < breaks.size(); ++i)
    if (x <= breaks[i]) return values[i];
  return values.back();
}

bool Interval1D::contains(double x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

bool FiniteUnion1D::contains(double x) const {
  for (const Interval1D &p : pieces)
    if (p.contains(x)) return true;
  return false;
}

double FiniteUnion1D::dist(double x) const {
  double d = kInf;
  for (const Interval1D &p : pieces) {
    double v = x < p.lo ? p.lo - x : (x > p.hi ? x - p.hi : 0.0);
    d = std::min(d, v);
  }
  return d;
}

namespace {

struct Piece1D {
  double lo = 0.0, hi = 0.0;
  bool lo_closed = true, hi_closed = true;
  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
};

// Exact infimum of a piecewise constant function over a finite union of
// intervals: a branch value is a candidate iff its half-open region meets a
// piece.
double exact_inf(const PiecewiseFn1D &phi, const std::vector<Piece1D> &pieces) {
  double best = kInf;
  const std::size_t nb = phi.breaks.size();
  for (const Piece1D &pc : pieces) {
    if (pc.empty()) continue;
    for (std::size_t i = 0; i <= nb; ++i) {
      double c = i == 0 ? -kInf : phi.breaks[i - 1]; // region (c, d], last one (c, ∞)
      double d = i < nb ? phi.breaks[i] : kInf;
      double lo = std::max(pc.lo, c);
      bool lo_closed = pc.lo > c ? pc.lo_closed : false;
      double hi = std::min(pc.hi, d);
      bool hi_closed = pc.hi <= d ? pc.hi_closed : true;
      if (std::isinf(d) && hi >= d) hi_closed = false;
      bool nonempty = lo < hi || (lo == hi && lo_closed && hi_closed);
      if (nonempty) best = std::min(best, phi.values[i]);
    }
  }
  return best;
}

Piece1D intersect_closed(double alo, double ahi, const Interval1D &b) {
  Piece1D out;
  out.lo = std::max(alo, b.lo);
  out.hi = std::min(ahi, b.hi);
  out.lo_closed = out.lo > b.lo ? true : b.lo_closed;
  out.hi_closed = out.hi < b.hi ? true : b.hi_closed;
  return out;
}

} // namespace

LscReport lsc_relative_estimate(const PiecewiseFn1D &phi, const FiniteUnion1D &omega, const Interval1D &U,
                                int levels, int resolution) {
  if (phi.values.size() != phi.breaks.size() + 1)
    throw std::invalid_argument("lsc estimate: need one more branch value than breakpoints");
  for (std::size_t i = 1; i < phi.breaks.size(); ++i)
    if (!(phi.breaks[i - 1] < phi.breaks[i])) throw std::invalid_argument("lsc estimate: breakpoints must increase");
  if (!(U.lo <= U.hi) || !std::isfinite(U.lo) || !std::isfinite(U.hi))
    throw std::invalid_argument("lsc estimate: U must be a bounded interval");
  if (omega.pieces.empty()) throw std::invalid_argument("lsc estimate: omega is empty");
  if (levels < 1 || resolution < 2) throw std::invalid_argument("lsc estimate: bad ladder parameters");

  // Ω ∩ U, exactly.
  std::vector<Piece1D> meet;
  for (const Interval1D &p : omega.pieces) {
    Piece1D pc;
    pc.lo = std::max(p.lo, U.lo);
    pc.hi = std::min(p.hi, U.hi);
    pc.lo_closed = (pc.lo > p.lo || p.lo_closed) && (pc.lo > U.lo || U.lo_closed);
    pc.hi_closed = (pc.hi < p.hi || p.hi_closed) && (pc.hi < U.hi || U.hi_closed);
    meet.push_back(pc);
  }
  bool any = false;
  for (const Piece1D &pc : meet) any = any || !pc.empty();
  if (!any) throw std::invalid_argument("lsc estimate: omega does not meet U");

  LscReport rep;
  rep.lhs = exact_inf(phi, meet);

  double diam = U.hi - U.lo;
  rep.rhs = kInf;
  for (int j = 1; j <= levels; ++j) {
    double rho = diam / std::pow(2.0, j);
    double lo_in = U.lo + rho * (U.lo_closed ? 1.0 : 1.125);
    double hi_in = U.hi - rho * (U.hi_closed ? 1.0 : 1.125);
    if (!(lo_in <= hi_in)) continue; // no inner set at this rung
    double t = std::min(diam / resolution, rho / 8.0);
    std::vector<Piece1D> approach;
    for (const Interval1D &p : omega.pieces)
      approach.push_back(intersect_closed(lo_in, hi_in, Interval1D{p.lo - t, p.hi + t, true, true}));
    rep.rhs = std::min(rep.rhs, exact_inf(phi, approach));
  }

  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.lhs <= rep.rhs + 1e-12 * std::max(1.0, std::abs(rep.rhs));
  return rep;
}

} // namespace nonlip::lab
