#include "nonlip/sets.hpp"

#include <cmath>
#include <stdexcept>

namespace nonlip {

namespace {

void require(bool cond, const char *msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_dim(const ConvexSetDescriptor &K, const Eigen::VectorXd &y) {
  if (set_dim(K) != y.size()) throw std::invalid_argument("set/vector dimension mismatch");
}

} // namespace

bool BoxSet::bounded() const {
  return lower.allFinite() && upper.allFinite();
}

void BoxSet::validate() const {
  require(lower.size() == upper.size(), "box: lower/upper size mismatch");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    require(!(lower[i] > upper[i]), "box: lower > upper");
    require(!std::isnan(lower[i]) && !std::isnan(upper[i]), "box: NaN bound");
    require(lower[i] < kInf && upper[i] > -kInf, "box: empty component");
  }
}

bool BoxSet::contains(const Eigen::VectorXd &x) const {
  if (x.size() != dim()) throw std::invalid_argument("box: dimension mismatch");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  return true;
}

Eigen::VectorXd BoxSet::clamp(const Eigen::VectorXd &x) const {
  if (x.size() != dim()) throw std::invalid_argument("box: dimension mismatch");
  return x.cwiseMax(lower).cwiseMin(upper);
}

BoxSet BoxSet::free(Eigen::Index n) {
  return {Eigen::VectorXd::Constant(n, -kInf), Eigen::VectorXd::Constant(n, kInf)};
}

BoxSet BoxSet::uniform(Eigen::Index n, double lo, double hi) {
  return {Eigen::VectorXd::Constant(n, lo), Eigen::VectorXd::Constant(n, hi)};
}

Eigen::Index set_dim(const ConvexSetDescriptor &K) {
  return std::visit([](const auto &s) { return s.dim(); }, K);
}

void validate(const ConvexSetDescriptor &K) {
  if (const auto *b = std::get_if<BoxSet>(&K)) {
    b->validate();
  } else if (const auto *ball = std::get_if<Ball>(&K)) {
    require(ball->radius > 0 && std::isfinite(ball->radius), "ball: radius must be positive");
    require(ball->center.allFinite(), "ball: center must be finite");
  } else if (const auto *h = std::get_if<Halfspace>(&K)) {
    require(h->normal.allFinite() && h->normal.norm() > 0, "halfspace: zero normal");
    require(std::isfinite(h->offset), "halfspace: offset must be finite");
  }
  require(set_dim(K) > 0, "set: dimension must be positive");
}

Eigen::VectorXd project(const ConvexSetDescriptor &K, const Eigen::VectorXd &y) {
  check_dim(K, y);
  if (const auto *b = std::get_if<BoxSet>(&K)) return b->clamp(y);
  if (std::holds_alternative<NonpositiveOrthant>(K)) return y.cwiseMin(0.0);
  if (std::holds_alternative<ZeroSet>(K)) return Eigen::VectorXd::Zero(y.size());
  if (const auto *ball = std::get_if<Ball>(&K)) {
    Eigen::VectorXd d = y - ball->center;
    double r = d.norm();
    if (r <= ball->radius) return y;
    return ball->center + (ball->radius / r) * d;
  }
  const auto &h = std::get<Halfspace>(K);
  double excess = h.normal.dot(y) - h.offset;
  if (excess <= 0) return y;
  return y - (excess / h.normal.squaredNorm()) * h.normal;
}

DistResult dist_and_distsq(const ConvexSetDescriptor &K, const Eigen::VectorXd &y) {
  double d = (y - project(K, y)).norm();
  return {d, d * d};
}

bool contains(const ConvexSetDescriptor &K, const Eigen::VectorXd &y, double tol) {
  return dist_and_distsq(K, y).dist <= tol;
}

std::vector<Interval> box_normal_cone(const BoxSet &box, const Eigen::VectorXd &x) {
  if (!box.contains(x)) throw std::invalid_argument("normal cone: point not in box");
  std::vector<Interval> out(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    bool at_lo = x[i] <= box.lower[i];
    bool at_hi = x[i] >= box.upper[i];
    if (at_lo && at_hi) out[i] = Interval::all();
    else if (at_lo) out[i] = Interval::nonpos();
    else if (at_hi) out[i] = Interval::nonneg();
    else out[i] = Interval::zero();
  }
  return out;
}

NormalCone normal_cone(const ConvexSetDescriptor &K, const Eigen::VectorXd &y, double tol) {
  check_dim(K, y);
  NormalCone cone;
  if (const auto *b = std::get_if<BoxSet>(&K)) {
    cone.intervals = box_normal_cone(*b, y);
    return cone;
  }
  if (std::holds_alternative<NonpositiveOrthant>(K)) {
    cone.intervals.resize(static_cast<std::size_t>(y.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] > 0) throw std::invalid_argument("normal cone: point not in orthant");
      cone.intervals[i] = (y[i] == 0.0) ? Interval::nonneg() : Interval::zero();
    }
    return cone;
  }
  if (std::holds_alternative<ZeroSet>(K)) {
    if (y.cwiseAbs().maxCoeff() != 0.0) throw std::invalid_argument("normal cone: point not in zero set");
    cone.intervals.assign(static_cast<std::size_t>(y.size()), Interval::all());
    return cone;
  }
  cone.kind = NormalCone::Kind::Ray;
  if (const auto *ball = std::get_if<Ball>(&K)) {
    Eigen::VectorXd d = y - ball->center;
    double r = d.norm();
    if (r > ball->radius + tol) throw std::invalid_argument("normal cone: point not in ball");
    cone.direction = (r >= ball->radius - tol) ? Eigen::VectorXd(d / ball->radius)
                                               : Eigen::VectorXd(Eigen::VectorXd::Zero(y.size()));
    return cone;
  }
  const auto &h = std::get<Halfspace>(K);
  double excess = h.normal.dot(y) - h.offset;
  if (excess > tol * (1.0 + std::abs(h.offset))) throw std::invalid_argument("normal cone: point not in halfspace");
  cone.direction = (excess >= -tol * (1.0 + std::abs(h.offset))) ? h.normal
                                                                 : Eigen::VectorXd(Eigen::VectorXd::Zero(y.size()));
  return cone;
}

bool in_normal_cone(const ConvexSetDescriptor &K, const Eigen::VectorXd &y, const Eigen::VectorXd &lambda,
                    double tol) {
  NormalCone cone = normal_cone(K, y, tol);
  if (cone.kind == NormalCone::Kind::Product) {
    for (std::size_t i = 0; i < cone.intervals.size(); ++i)
      if (!cone.intervals[i].contains(lambda[static_cast<Eigen::Index>(i)])) return false;
    return true;
  }
  double dn = cone.direction.norm();
  double ln = lambda.norm();
  if (dn == 0.0) return ln <= tol;
  if (ln == 0.0) return true;
  double s = lambda.dot(cone.direction) / (dn * dn);
  if (s < -tol) return false;
  return (lambda - s * cone.direction).norm() <= tol * std::max(1.0, ln);
}

} // namespace nonlip
