#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

// Small planar geometry lab: exact projections onto a fixed catalog of sets,
// a grid-refined emptiness gap for enlarged-set intersections, a one-sided
// extremality probe built on it, and the separation checks behind the demo
// subcommand. Also a 1D estimator for lower semicontinuity of a piecewise
// constant function relative to a set.

namespace nonlip::lab {

using Vec2 = Eigen::Vector2d;

// Closed half-line {base + s·dir : s ≥ 0}, dir a unit vector.
struct Halfline {
  Vec2 base{0, 0};
  Vec2 dir{1, 0};
};

// {(x,y) : x ≥ 0, |y| ≥ e^{−x}} ∪ {(0,0)}: pinches toward the x-axis but
// never reaches it, so enlargements always overlap a neighboring ray.
struct ThinningRegion {};

// {(x,y) : max(y, x + y) ≥ 0}, the union of two halfplanes with a kink at 0.
struct KinkedUnion {};

// {(x,y) : y ≤ 0}.
struct LowerHalfplane {};

struct Disk {
  Vec2 center{0, 0};
  double radius = 1.0;
};

using ImplicitSet2D = std::variant<Halfline, ThinningRegion, KinkedUnion, LowerHalfplane, Disk>;

std::string describe(const ImplicitSet2D &S);
bool contains(const ImplicitSet2D &S, const Vec2 &z, double tol = 0.0);
// Exact projections; ThinningRegion parameterizes its boundary curves and
// minimizes the 1D distance to 1e-10.
Vec2 project(const ImplicitSet2D &S, const Vec2 &z);
double dist(const ImplicitSet2D &S, const Vec2 &z);

struct Window {
  double x_lo = -10, x_hi = 10, y_lo = -10, y_hi = 10;
};

struct GapResult {
  double gap = 0.0;    // min over grid of (dist_A(z+a) − ρ)₊ + (dist_B(z) − ρ)₊
  bool witness = false; // gap < 1e-9: z + a ∈ A + ρB and z ∈ B + ρB
  Vec2 z{0, 0};
  bool window_warning = false; // an enlarged set never intersected the searched window
  std::int64_t evaluations = 0;
};

// Grid search over the window with `levels` rounds of local refinement around
// the best cells. gap > 0 estimates emptiness of (A + ρB − a) ∩ (B + ρB);
// gap < 1e-9 returns the witness point.
GapResult enlargement_gap(const ImplicitSet2D &A, const ImplicitSet2D &B, const Vec2 &a, double rho,
                          const Window &window, int resolution = 64, int levels = 8);

struct ProbeResult {
  bool witnessed = false; // some (a, ρ) kept the enlargements disjoint
  Vec2 a{0, 0};
  double rho = 0.0;
  double gap = 0.0;
  std::int64_t evaluations = 0;
};

// One-sided extremality probe: samples ‖a‖ < eps (a = 0 first, then seeded
// directions) against the ladder ρ = eps/2, eps/4, … and reports the first
// (a, ρ) whose enlargement gap stays positive. Not finding one is evidence,
// not proof, that the pair resists separation.
ProbeResult extremality_probe(const ImplicitSet2D &A, const ImplicitSet2D &B, double eps,
                              std::int64_t budget, const Window &window, unsigned seed = 7);

struct FamilyCheckResult {
  bool ok = false;         // every sampled finite value exceeds bound − slack
  double min_value = 0.0;  // over sampled pairs with u ≤ 0
  double bound = 0.0;      // t − 3ρ
  std::int64_t samples = 0;
};

// Separation family for the kinked-union / lower-halfplane pair:
// value(x,y,u,v) = ‖(x − u, y − v + t)‖ restricted to u ≤ 0, sampled over
// (KinkedUnion + ρB) × (LowerHalfplane + ρB) near the origin. For ρ < t/3
// every finite value stays above t − 3ρ although both sets contain 0.
FamilyCheckResult separation_family_check(double t, double rho, int resolution = 80);

struct DualConfig {
  Vec2 point1, normal1; // boundary point of KinkedUnion and a unit normal there
  Vec2 point2, normal2; // boundary point of LowerHalfplane and a unit normal
  double cone_residual = 0.0; // max distance of the normals to the analytic cones
};

// The two limiting dual configurations of the separation family at scale eps:
// normals (0,−1)/(0,1) on the flat branch and (−√2/2,−√2/2)/(0,√2/2) on the
// slanted branch; both satisfy ‖(x*,y*)‖ = 1, x* + u* ≤ 0, y* + v* = 0.
std::array<DualConfig, 2> separation_dual_vectors(double eps);

// --- relative lower semicontinuity, 1D ---

// Piecewise constant, right-open at breaks: value(x) = values[i] on
// (breaks[i−1], breaks[i]], values.back() on (breaks.back(), ∞).
struct PiecewiseFn1D {
  std::vector<double> breaks;
  std::vector<double> values; // size = breaks.size() + 1
  double value(double x) const;
};

struct Interval1D {
  double lo = 0.0, hi = 0.0;
  bool lo_closed = true, hi_closed = true;
  bool contains(double x) const;
  double diam() const { return hi - lo; }
};

// Finite union of closed intervals (points as degenerate intervals).
struct FiniteUnion1D {
  std::vector<Interval1D> pieces;
  bool contains(double x) const;
  double dist(double x) const;
};

struct LscReport {
  double lhs = 0.0; // inf φ over Ω ∩ U (exact for this function class)
  double rhs = 0.0; // estimated inf over inner subsets of the liminf toward Ω
  bool holds = false;
  double slack = 0.0;
};

// Estimates lower semicontinuity of φ on Ω relative to U: shrink U by the
// ladder ρⱼ = diam(U)/2ʲ, j = 1..levels, take grid liminf of φ over points
// approaching Ω inside the shrunken set, and compare against inf φ on Ω ∩ U.
LscReport lsc_relative_estimate(const PiecewiseFn1D &phi, const FiniteUnion1D &omega, const Interval1D &U,
                                int levels = 12, int resolution = 4096);

} // namespace nonlip::lab
