#include "nonlip/lp_term.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace nonlip {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_exponent(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("lp term: exponent must lie in (0,1)");
}

void check_weight(double w) {
  if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("lp term: weight must be finite and nonnegative");
}

// Stationary local minimum of h(t) = ½(t−v)² + w·tᵖ on (0,∞) for v > 0:
// the larger root of g(t) = t − v + w·p·t^{p−1}, which is convex with its
// minimum at t̂ = [w·p·(1−p)]^{1/(2−p)}. Newton from t = v with a bisection
// safeguard on [t̂, v]; no root means h is increasing on (0,∞).
std::optional<double> interior_stationary_point(double v, double w, double p) {
  if (v <= 0.0 || w == 0.0) return std::nullopt;
  double that = std::pow(w * p * (1.0 - p), 1.0 / (2.0 - p));
  if (that >= v) return std::nullopt;
  auto g = [&](double t) { return t - v + w * p * std::pow(t, p - 1.0); };
  if (g(that) >= 0.0) return std::nullopt;
  double lo = that, hi = v, t = v;
  for (int it = 0; it < 200; ++it) {
    double gt = g(t);
    if (std::abs(gt) <= 1e-12 * std::max(1.0, v)) return t;
    if (gt > 0.0) hi = t;
    else lo = t;
    double gp = 1.0 + w * p * (p - 1.0) * std::pow(t, p - 2.0);
    double next = (gp > 0.0) ? t - gt / gp : 0.5 * (lo + hi);
    t = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * kEps * std::max(1.0, hi)) break;
  }
  return t;
}

double objective(double t, double v, double w, double p) {
  return 0.5 * (t - v) * (t - v) + w * std::pow(std::abs(t), p);
}

} // namespace

void LpSeparableTerm::validate() const {
  check_exponent(p);
  for (Eigen::Index i = 0; i < weights.size(); ++i) check_weight(weights[i]);
}

double LpSeparableTerm::value(const Eigen::VectorXd &x) const {
  if (x.size() != weights.size()) throw std::invalid_argument("lp term: dimension mismatch");
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += weights[i] * std::pow(std::abs(x[i]), p);
  return s;
}

double prox_lp_scalar(double v, double w, double p) {
  check_exponent(p);
  check_weight(w);
  if (!std::isfinite(v)) throw std::invalid_argument("prox: point must be finite");
  if (w == 0.0) return v;
  if (v == 0.0) return 0.0;
  double sign = v < 0.0 ? -1.0 : 1.0;
  double a = std::abs(v);
  auto t2 = interior_stationary_point(a, w, p);
  if (!t2) return 0.0;
  double tie = 16.0 * kEps * std::max(1.0, 0.5 * a * a);
  if (objective(0.0, a, w, p) <= objective(*t2, a, w, p) + tie) return 0.0;
  return sign * *t2;
}

double prox_lp_box(double v, double w, double p, double lower, double upper) {
  check_exponent(p);
  check_weight(w);
  if (!std::isfinite(v)) throw std::invalid_argument("prox: point must be finite");
  if (std::isnan(lower) || std::isnan(upper) || lower > upper)
    throw std::invalid_argument("prox: invalid interval");
  if (w == 0.0) return std::min(std::max(v, lower), upper);

  // h is monotone between its critical points, so the minimizer over the
  // interval is 0, a finite endpoint, or the sign-side stationary point.
  double best = std::numeric_limits<double>::quiet_NaN();
  double hbest = kInf;
  auto consider = [&](double t) {
    double ht = objective(t, v, w, p);
    if (ht < hbest) {
      best = t;
      hbest = ht;
    }
  };
  if (std::isfinite(lower)) consider(lower);
  if (std::isfinite(upper)) consider(upper);
  if (auto t2 = interior_stationary_point(std::abs(v), w, p)) {
    double t = (v < 0.0 ? -1.0 : 1.0) * *t2;
    if (t >= lower && t <= upper) consider(t);
  }
  if (lower <= 0.0 && 0.0 <= upper) {
    double h0 = objective(0.0, v, w, p);
    if (h0 <= hbest + 16.0 * kEps * std::max(1.0, std::min(h0, hbest))) return 0.0;
  }
  if (std::isnan(best)) throw std::invalid_argument("prox: interval has no finite candidate");
  return best;
}

SubdiffValue lp_subdiff_point(double u, double w, double p) {
  check_exponent(p);
  check_weight(w);
  if (u == 0.0) return {true, 0.0};
  return {false, w * p * std::pow(std::abs(u), p - 2.0) * u};
}

} // namespace nonlip
