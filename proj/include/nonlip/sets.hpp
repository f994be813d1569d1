#pragma once

#include <Eigen/Core>
#include <limits>
#include <variant>
#include <vector>

// Closed convex sets used for the constraint cone K and the feasible box C.
// The catalog is a closed enumeration: every consumer dispatches over the
// variant, so adding an alternative is a deliberate API change.

namespace nonlip {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Componentwise box [lower, upper]; ±inf entries mark absent bounds.
// lower.size() == upper.size(), lowerᵢ ≤ upperᵢ.
struct BoxSet {
  Eigen::VectorXd lower, upper;

  Eigen::Index dim() const { return lower.size(); }
  bool bounded() const;
  void validate() const;
  bool contains(const Eigen::VectorXd &x) const;
  Eigen::VectorXd clamp(const Eigen::VectorXd &x) const;

  static BoxSet free(Eigen::Index n);
  static BoxSet uniform(Eigen::Index n, double lo, double hi);
};

struct NonpositiveOrthant {
  Eigen::Index dim_ = 0;
  Eigen::Index dim() const { return dim_; }
};

struct ZeroSet {
  Eigen::Index dim_ = 0;
  Eigen::Index dim() const { return dim_; }
};

struct Ball {
  Eigen::VectorXd center;
  double radius = 1.0;
  Eigen::Index dim() const { return center.size(); }
};

// { y : ⟨normal, y⟩ ≤ offset }, normal ≠ 0.
struct Halfspace {
  Eigen::VectorXd normal;
  double offset = 0.0;
  Eigen::Index dim() const { return normal.size(); }
};

using ConvexSetDescriptor = std::variant<BoxSet, NonpositiveOrthant, ZeroSet, Ball, Halfspace>;

Eigen::Index set_dim(const ConvexSetDescriptor &K);
void validate(const ConvexSetDescriptor &K);

// Nearest point of K in the Euclidean norm.
Eigen::VectorXd project(const ConvexSetDescriptor &K, const Eigen::VectorXd &y);

struct DistResult {
  double dist = 0.0;
  double distsq = 0.0;
};

// dist_K(y) and its square, via the projection.
DistResult dist_and_distsq(const ConvexSetDescriptor &K, const Eigen::VectorXd &y);

bool contains(const ConvexSetDescriptor &K, const Eigen::VectorXd &y, double tol = 0.0);

// Closed interval with ±inf endpoints; the building block for normal cones of
// separable sets and for the ∂q singletons.
struct Interval {
  double lo = 0.0, hi = 0.0;
  bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
  double project(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
  double dist(double v) const { return v < lo ? lo - v : (v > hi ? v - hi : 0.0); }
  static Interval all() { return {-kInf, kInf}; }
  static Interval zero() { return {0.0, 0.0}; }
  static Interval nonneg() { return {0.0, kInf}; }
  static Interval nonpos() { return {-kInf, 0.0}; }
};

// Normal cone of K at y ∈ K. Product sets yield one interval per component;
// Ball and Halfspace yield a ray {s·direction : s ≥ 0} (or {0} at interior
// points, encoded as direction = 0).
struct NormalCone {
  enum class Kind { Product, Ray } kind = Kind::Product;
  std::vector<Interval> intervals; // Kind::Product
  Eigen::VectorXd direction;       // Kind::Ray, unnormalized; zero means {0}
};

// Requires y ∈ K (tolerance `tol` for the boundary classification of Ball).
NormalCone normal_cone(const ConvexSetDescriptor &K, const Eigen::VectorXd &y, double tol = 1e-12);

// Membership test λ ∈ N_K(y). Product cones use exact sign tests; Ray cones
// compare against the ray direction with tolerance `tol`.
bool in_normal_cone(const ConvexSetDescriptor &K, const Eigen::VectorXd &y, const Eigen::VectorXd &lambda,
                    double tol = 1e-12);

// Normal cone of a box at x, one interval per component. Requires x ∈ box.
std::vector<Interval> box_normal_cone(const BoxSet &box, const Eigen::VectorXd &x);

} // namespace nonlip
