#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "nonlip/variational_lab.hpp"

using namespace nonlip::lab;

namespace {

ImplicitSet2D xray() { return Halfline{Vec2(0, 0), Vec2(1, 0)}; }
ImplicitSet2D yray() { return Halfline{Vec2(0, 0), Vec2(0, 1)}; }

// One random member per draw, constructed from the defining formula of each
// set rather than through project().
Vec2 sample_member(const ImplicitSet2D &S, std::mt19937 &rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (const auto *h = std::get_if<Halfline>(&S)) return h->base + (10.0 * u01(rng)) * h->dir.normalized();
  if (std::holds_alternative<ThinningRegion>(S)) {
    double pick = u01(rng);
    if (pick < 0.05) return Vec2(0, 0);
    double x = 10.0 * u01(rng);
    double y = std::exp(-x) + 5.0 * u01(rng);
    return Vec2(x, pick < 0.55 ? y : -y);
  }
  if (std::holds_alternative<KinkedUnion>(S)) {
    double x = -10.0 + 20.0 * u01(rng);
    if (u01(rng) < 0.5) return Vec2(x, 5.0 * u01(rng));        // y ≥ 0 branch
    return Vec2(x, -x + 5.0 * u01(rng));                       // x + y ≥ 0 branch
  }
  if (std::holds_alternative<LowerHalfplane>(S)) return Vec2(-10.0 + 20.0 * u01(rng), -10.0 * u01(rng));
  const auto &d = std::get<Disk>(S);
  double r = d.radius * std::sqrt(u01(rng));
  double phi = 6.283185307179586 * u01(rng);
  return d.center + r * Vec2(std::cos(phi), std::sin(phi));
}

std::vector<ImplicitSet2D> lab_catalog() {
  return {xray(), ThinningRegion{}, KinkedUnion{}, LowerHalfplane{}, Disk{Vec2(0.5, -1.0), 1.5}};
}

} // namespace

TEST_CASE("membership matches the defining formulas") {
  CHECK(contains(xray(), Vec2(3.0, 0.0)));
  CHECK_FALSE(contains(xray(), Vec2(-0.1, 0.0)));
  CHECK_FALSE(contains(xray(), Vec2(3.0, 0.1)));

  ImplicitSet2D thin = ThinningRegion{};
  CHECK(contains(thin, Vec2(0.0, 0.0)));
  CHECK(contains(thin, Vec2(2.0, std::exp(-2.0))));
  CHECK(contains(thin, Vec2(2.0, -1.0)));
  CHECK_FALSE(contains(thin, Vec2(2.0, 0.5 * std::exp(-2.0))));
  CHECK_FALSE(contains(thin, Vec2(-1.0, 3.0)));

  ImplicitSet2D kinked = KinkedUnion{};
  CHECK(contains(kinked, Vec2(-5.0, 0.0)));
  CHECK(contains(kinked, Vec2(5.0, -4.0)));
  CHECK_FALSE(contains(kinked, Vec2(-1.0, -0.5)));

  CHECK(contains(LowerHalfplane{}, Vec2(7.0, -0.25)));
  CHECK_FALSE(contains(LowerHalfplane{}, Vec2(7.0, 0.25)));

  ImplicitSet2D disk = Disk{Vec2(1.0, 1.0), 2.0};
  CHECK(contains(disk, Vec2(1.0, 3.0)));
  CHECK_FALSE(contains(disk, Vec2(1.0, 3.0 + 1e-9)));

  for (const ImplicitSet2D &S : lab_catalog()) CHECK(describe(S).size() > 0);
}

TEST_CASE("projections are optimal against member sweeps") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> box(-10.0, 10.0);
  for (const ImplicitSet2D &S : lab_catalog()) {
    for (int trial = 0; trial < 2000; ++trial) {
      Vec2 z(box(rng), box(rng));
      Vec2 p = project(S, z);
      CHECK(contains(S, p, 1e-8));
      CHECK((z - p).norm() == doctest::Approx(dist(S, z)).epsilon(1e-12));
      // No swept member may beat the projection.
      Vec2 m = sample_member(S, rng);
      CHECK((z - p).norm() <= (z - m).norm() + 1e-8);
      // Members are fixed points, and projecting twice changes nothing.
      CHECK((project(S, m) - m).norm() <= 1e-8);
      CHECK((project(S, p) - p).norm() <= 1e-8);
    }
  }
}

TEST_CASE("thinning region projection resolves the three competing pieces") {
  ImplicitSet2D thin = ThinningRegion{};
  // Far left and close to the axis: the isolated origin wins.
  CHECK((project(thin, Vec2(-1.0, 0.01)) - Vec2(0, 0)).norm() <= 1e-10);
  // Above the left edge: clamp to {0} × [1, ∞).
  CHECK((project(thin, Vec2(-2.0, 3.0)) - Vec2(0.0, 3.0)).norm() <= 1e-10);
  // Between the branches the projection lands on the boundary curve.
  Vec2 p = project(thin, Vec2(1.0, 0.2));
  CHECK(p.x() > 0.0);
  CHECK(p.y() == doctest::Approx(std::exp(-p.x())).epsilon(1e-8));
  // Symmetry across the x-axis.
  Vec2 q = project(thin, Vec2(1.0, -0.2));
  CHECK((q - Vec2(p.x(), -p.y())).norm() <= 1e-9);
}

TEST_CASE("separated disks keep a positive enlargement gap") {
  ImplicitSet2D top = Disk{Vec2(0, 2), 1.0};
  ImplicitSet2D bottom = Disk{Vec2(0, -2), 1.0};
  Window win{-3, 3, -3, 3};

  GapResult g = enlargement_gap(top, bottom, Vec2(0, 0), 0.5, win);
  CHECK_FALSE(g.witness);
  CHECK(g.gap >= 1.0 - 1e-9);
  CHECK(g.gap == doctest::Approx(1.0).epsilon(1e-12));
  // Both distance excesses contribute: clipping only the larger one would
  // report 0.5 here.
  CHECK(g.gap > 0.75);
  CHECK_FALSE(g.window_warning);

  // The gap shrinks as the enlargement radius grows, exactly 2 − 2ρ here.
  double last = 3.0;
  for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    GapResult gr = enlargement_gap(top, bottom, Vec2(0, 0), rho, win);
    CHECK(gr.gap == doctest::Approx(2.0 - 2.0 * rho).epsilon(1e-12));
    CHECK(gr.gap < last);
    last = gr.gap;
  }
}

TEST_CASE("swapping the sets and negating the shift preserves the gap") {
  ImplicitSet2D top = Disk{Vec2(0, 2), 1.0};
  ImplicitSet2D bottom = Disk{Vec2(0, -2), 1.0};
  Window win{-4, 4, -4, 4};
  Vec2 a(0.0, 0.5);
  GapResult g1 = enlargement_gap(top, bottom, a, 0.25, win);
  GapResult g2 = enlargement_gap(bottom, top, -a, 0.25, win);
  CHECK(std::abs(g1.gap - g2.gap) <= 1e-10);
  CHECK(g1.gap == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("overlapping enlargements certify a witness point") {
  ImplicitSet2D disk = Disk{Vec2(0, 0), 1.0};
  Window win{-2, 2, -2, 2};
  GapResult g = enlargement_gap(disk, disk, Vec2(0, 0), 0.1, win);
  CHECK(g.witness);
  CHECK(g.gap <= 1e-9);
  CHECK(dist(disk, g.z) <= 0.1 + 1e-9);
}

TEST_CASE("ray and thinning region enlargements always meet") {
  ImplicitSet2D ray = xray();
  ImplicitSet2D thin = ThinningRegion{};
  Vec2 a(-0.1, 0.05);
  double rho = 0.01;

  // The meeting points sit just below the x-axis (the translated ray tube
  // lives at y ∈ [−0.06, −0.04]), so the window must reach negative y.
  Window win{0, 20, -2, 2};
  GapResult g = enlargement_gap(ray, thin, a, rho, win);
  CHECK(g.witness);
  CHECK(g.gap <= 1e-9);
  CHECK_FALSE(g.window_warning);
  CHECK(g.z.y() < 0.0);
  CHECK(g.z.y() == doctest::Approx(-0.05).epsilon(0.25));
  CHECK(dist(ray, g.z + a) <= rho + 1e-9);
  CHECK(dist(thin, g.z) <= rho + 1e-9);

  // A window restricted to y ≥ 0 misses the tube entirely; the warning flag
  // reports that one enlarged set never entered the searched region.
  Window off{0, 20, 0, 20};
  GapResult miss = enlargement_gap(ray, thin, a, rho, off);
  CHECK_FALSE(miss.witness);
  CHECK(miss.gap > 0.03);
  CHECK(miss.window_warning);

  // Same conclusion across a spread of translations and radii.
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    double r = 0.5 * std::sqrt(u01(rng));
    double phi = 6.283185307179586 * u01(rng);
    Vec2 at(r * std::cos(phi), r * std::sin(phi));
    double rt = 1e-3 * std::pow(100.0, u01(rng));
    GapResult gt = enlargement_gap(ray, thin, at, rt, win);
    CHECK(gt.witness);
  }
}

TEST_CASE("enlargement gap validates its inputs") {
  ImplicitSet2D disk = Disk{Vec2(0, 0), 1.0};
  Window win{-1, 1, -1, 1};
  CHECK_THROWS_AS(enlargement_gap(disk, disk, Vec2(0, 0), 0.0, win), std::invalid_argument);
  CHECK_THROWS_AS(enlargement_gap(disk, disk, Vec2(0, 0), -0.5, win), std::invalid_argument);
  CHECK_THROWS_AS(enlargement_gap(disk, disk, Vec2(0, 0), 0.1, Window{1, -1, -1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(enlargement_gap(disk, disk, Vec2(0, 0), 0.1, win, 1), std::invalid_argument);
  CHECK_THROWS_AS(enlargement_gap(disk, disk, Vec2(0, 0), 0.1, win, 64, -1), std::invalid_argument);
}

TEST_CASE("probe finds no separating pair for the ray / thinning region") {
  Window win{0, 20, -2, 2};
  ProbeResult pr = extremality_probe(xray(), ThinningRegion{}, 0.5, 10000, win);
  CHECK_FALSE(pr.witnessed);
  CHECK(pr.evaluations >= 10000);
  CHECK(pr.gap == 0.0);
}

TEST_CASE("probe separates disjoint disks without any translation") {
  ImplicitSet2D top = Disk{Vec2(0, 2), 1.0};
  ImplicitSet2D bottom = Disk{Vec2(0, -2), 1.0};
  Window win{-3, 3, -3, 3};
  ProbeResult pr = extremality_probe(top, bottom, 0.5, 10000, win);
  CHECK(pr.witnessed);
  CHECK(pr.a.norm() == 0.0);
  // The ladder walks up to ρ = ε/2 because the sets stay 2 apart.
  CHECK(pr.rho == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(pr.gap > 0.0);
}

TEST_CASE("probe separates crossing rays by a small translation") {
  Window win{-2, 2, -2, 2};
  ProbeResult pr = extremality_probe(xray(), yray(), 0.5, 200000, win);
  CHECK(pr.witnessed);
  CHECK(pr.a.norm() > 0.0);
  CHECK(pr.a.norm() < 0.5);
  // The reported pair reproduces at the probe's own grid parameters.
  GapResult g = enlargement_gap(xray(), yray(), pr.a, pr.rho, win, 32, 4);
  CHECK(g.gap > 0.0);
  CHECK(g.gap == doctest::Approx(pr.gap).epsilon(1e-12));
}

TEST_CASE("probe validates its inputs") {
  Window win{-1, 1, -1, 1};
  CHECK_THROWS_AS(extremality_probe(xray(), yray(), 0.0, 100, win), std::invalid_argument);
  CHECK_THROWS_AS(extremality_probe(xray(), yray(), 0.5, 0, win), std::invalid_argument);
}

TEST_CASE("separation family stays above its lower bound") {
  FamilyCheckResult near = separation_family_check(0.05, 0.01);
  CHECK(near.ok);
  CHECK(near.bound == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(near.min_value > 0.02 - 1e-9);
  CHECK(near.samples > 0);

  FamilyCheckResult wide = separation_family_check(0.3, 0.05);
  CHECK(wide.ok);
  CHECK(wide.bound == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(wide.min_value > wide.bound - 1e-9);

  CHECK_THROWS_AS(separation_family_check(0.3, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(separation_family_check(0.3, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(separation_family_check(-0.1, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(separation_family_check(0.05, 0.01, 3), std::invalid_argument);
}

TEST_CASE("dual configurations carry the analytic normals") {
  ImplicitSet2D kinked = KinkedUnion{};
  ImplicitSet2D lower = LowerHalfplane{};
  const double r2 = std::sqrt(2.0) / 2.0;
  for (double eps : {0.1, 0.01}) {
    auto [flat, slant] = separation_dual_vectors(eps);

    CHECK(contains(kinked, flat.point1));
    CHECK(contains(lower, flat.point2));
    CHECK((flat.normal1 - Vec2(0, -1)).norm() <= 1e-9);
    CHECK((flat.normal2 - Vec2(0, 1)).norm() <= 1e-9);

    CHECK(contains(kinked, slant.point1));
    CHECK(contains(lower, slant.point2));
    CHECK((slant.normal1 - Vec2(-r2, -r2)).norm() <= 1e-9);
    CHECK((slant.normal2 - Vec2(0, r2)).norm() <= 1e-9);

    for (const DualConfig &cfg : {flat, slant}) {
      CHECK(cfg.cone_residual <= 1e-9);
      // The kinked-union dual is normalized; the halfplane dual balances it.
      CHECK(cfg.normal1.norm() == doctest::Approx(1.0).epsilon(1e-12));
      // Sign identities of the dual pair: x* + u* ≤ 0 and y* + v* = 0.
      CHECK(cfg.normal1.x() + cfg.normal2.x() <= 1e-12);
      CHECK(std::abs(cfg.normal1.y() + cfg.normal2.y()) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(separation_dual_vectors(0.2), std::invalid_argument);
  CHECK_THROWS_AS(separation_dual_vectors(0.0), std::invalid_argument);
  CHECK_THROWS_AS(separation_dual_vectors(-0.1), std::invalid_argument);
}

TEST_CASE("piecewise values are right-closed at the breakpoints") {
  PiecewiseFn1D phi{{0.0}, {0.0, 1.0}};
  CHECK(phi.value(-1.0) == 0.0);
  CHECK(phi.value(0.0) == 0.0);
  CHECK(phi.value(1e-300) == 1.0);
  CHECK(phi.value(5.0) == 1.0);

  PiecewiseFn1D three{{-1.0, 1.0}, {2.0, -3.0, 4.0}};
  CHECK(three.value(-1.0) == 2.0);
  CHECK(three.value(0.0) == -3.0);
  CHECK(three.value(1.0) == -3.0);
  CHECK(three.value(1.5) == 4.0);
}

TEST_CASE("jump upward at the boundary point keeps relative lsc") {
  // φ = 0 on (−∞, 0], 1 beyond; Ω = U = [0, 1]. Approaching 0 from inside U
  // only sees the value 1, and inf over Ω ∩ U is 0.
  PiecewiseFn1D phi{{0.0}, {0.0, 1.0}};
  FiniteUnion1D omega{{Interval1D{0.0, 1.0, true, true}}};
  Interval1D U{0.0, 1.0, true, true};
  LscReport rep = lsc_relative_estimate(phi, omega, U);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.rhs == 1.0);
  CHECK(rep.holds);
}

TEST_CASE("two-point domain keeps lsc for the closed window only") {
  // φ = 0 on (−∞, 0], −1 beyond; Ω = {0, 1}, a pair of isolated points.
  PiecewiseFn1D phi{{0.0}, {0.0, -1.0}};
  FiniteUnion1D omega{{Interval1D{0.0, 0.0, true, true}, Interval1D{1.0, 1.0, true, true}}};

  Interval1D closed{-1.0, 1.0, true, true};
  LscReport ok = lsc_relative_estimate(phi, omega, closed);
  CHECK(ok.lhs == -1.0);
  CHECK(ok.rhs == -1.0);
  CHECK(ok.holds);

  // The open window drops the point 1 from Ω ∩ U but still lets approaching
  // points pick up the value −1 near 0, so the inequality genuinely fails.
  Interval1D open{-1.0, 1.0, false, false};
  LscReport bad = lsc_relative_estimate(phi, omega, open);
  CHECK(bad.lhs == 0.0);
  CHECK(bad.rhs == -1.0);
  CHECK_FALSE(bad.holds);
  CHECK(bad.slack == -1.0);
}

TEST_CASE("lsc estimator validates its inputs") {
  PiecewiseFn1D phi{{0.0}, {0.0, 1.0}};
  FiniteUnion1D omega{{Interval1D{0.0, 1.0, true, true}}};
  Interval1D U{0.0, 1.0, true, true};

  PiecewiseFn1D short_values{{0.0}, {1.0}};
  CHECK_THROWS_AS(lsc_relative_estimate(short_values, omega, U), std::invalid_argument);
  PiecewiseFn1D bad_breaks{{1.0, 0.0}, {0.0, 1.0, 2.0}};
  CHECK_THROWS_AS(lsc_relative_estimate(bad_breaks, omega, U), std::invalid_argument);

  Interval1D unbounded{0.0, std::numeric_limits<double>::infinity(), true, true};
  CHECK_THROWS_AS(lsc_relative_estimate(phi, omega, unbounded), std::invalid_argument);

  FiniteUnion1D empty{};
  CHECK_THROWS_AS(lsc_relative_estimate(phi, empty, U), std::invalid_argument);

  FiniteUnion1D far{{Interval1D{5.0, 6.0, true, true}}};
  CHECK_THROWS_AS(lsc_relative_estimate(phi, far, U), std::invalid_argument);

  CHECK_THROWS_AS(lsc_relative_estimate(phi, omega, U, 0), std::invalid_argument);
  CHECK_THROWS_AS(lsc_relative_estimate(phi, omega, U, 12, 1), std::invalid_argument);
}
