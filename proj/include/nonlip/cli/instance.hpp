#pragma once

#include <optional>
#include <string>

#include "nonlip/alm.hpp"
#include "nonlip/sparse_control.hpp"

// Instance documents for the command-line front end: strict JSON with a
// schema version, a problem family tag, family parameters, optional solver
// overrides, and an RNG seed for generated data. Unknown fields are errors.

namespace nonlip::cli {

struct QpFamilyParams {
  int n = 4, m = 2;
};

struct QuadraticFamilyParams {
  Eigen::MatrixXd Q; // f = ½xᵀQx + cᵀx
  Eigen::VectorXd c;
  std::optional<Eigen::VectorXd> box_lo, box_hi; // C, free when absent
  std::optional<Eigen::MatrixXd> rows;           // G(x) = rows·x − rhs
  std::optional<Eigen::VectorXd> rhs;
  std::string cone = "nonpositive"; // or "zero"
  std::optional<double> lp_p;       // q = Σ wᵢ|xᵢ|ᵖ when present
  std::optional<Eigen::VectorXd> lp_weights;
};

struct InstanceDocument {
  int schema_version = 1;
  std::string family; // builtin:example-5-1 | builtin:convex-qp | sparse-control | custom-quadratic
  std::string name;   // file-system friendly label, defaulted from the origin
  unsigned seed = 0;
  std::optional<AlmConfig> config; // overrides; absent fields keep defaults
  QpFamilyParams qp;
  SparseControlParams control;
  QuadraticFamilyParams quadratic;
  std::string raw_text; // original JSON, embedded into certificates
};

// Parses a document from text; `origin` names the source in error messages.
// Syntax errors report the line, schema errors the offending field.
InstanceDocument parse_instance_text(const std::string &text, const std::string &origin);
InstanceDocument load_instance(const std::string &path);

// Seeded convex QP  min ½xᵀQx + cᵀx  s.t.  Rx ≤ r  with Q ≻ 0 and a strictly
// feasible origin; the raw matrices stay visible for KKT cross-checks.
struct ConvexQp {
  Eigen::MatrixXd Q, R;
  Eigen::VectorXd c, r;
  ProblemSpec spec;
};

ConvexQp make_convex_qp(int n, int m, unsigned seed);

ProblemSpec build_problem(const InstanceDocument &doc);
Eigen::VectorXd initial_point(const InstanceDocument &doc);

} // namespace nonlip::cli
