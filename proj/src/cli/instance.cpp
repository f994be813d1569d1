#include "nonlip/cli/instance.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nonlip::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &origin, const std::string &msg) {
  throw std::runtime_error(origin + ": " + msg);
}

int line_of_byte(const std::string &text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

void reject_unknown(const json &obj, const std::string &origin, const char *where,
                    std::initializer_list<const char *> allowed) {
  for (const auto &item : obj.items()) {
    bool known = false;
    for (const char *k : allowed) known = known || item.key() == k;
    if (!known) fail(origin, std::string("unknown field '") + item.key() + "' in " + where);
  }
}

const json *find(const json &obj, const char *key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double need_number(const json &j, const std::string &origin, const std::string &what) {
  if (!j.is_number()) fail(origin, what + " must be a number");
  return j.get<double>();
}

int need_int(const json &j, const std::string &origin, const std::string &what) {
  if (!j.is_number_integer()) fail(origin, what + " must be an integer");
  return j.get<int>();
}

std::string need_string(const json &j, const std::string &origin, const std::string &what) {
  if (!j.is_string()) fail(origin, what + " must be a string");
  return j.get<std::string>();
}

Eigen::VectorXd need_vector(const json &j, const std::string &origin, const std::string &what) {
  if (!j.is_array()) fail(origin, what + " must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = need_number(j[i], origin, what);
  return v;
}

Eigen::MatrixXd need_matrix(const json &j, const std::string &origin, const std::string &what) {
  if (!j.is_array() || j.empty()) fail(origin, what + " must be a non-empty array of rows");
  Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::VectorXd first = need_vector(j[0], origin, what + " row");
  Eigen::MatrixXd M(rows, first.size());
  M.row(0) = first;
  for (Eigen::Index i = 1; i < rows; ++i) {
    Eigen::VectorXd row = need_vector(j[static_cast<std::size_t>(i)], origin, what + " row");
    if (row.size() != M.cols()) fail(origin, what + " rows must share one length");
    M.row(i) = row;
  }
  return M;
}

AlmConfig parse_config(const json &obj, const std::string &origin) {
  if (!obj.is_object()) fail(origin, "config must be an object");
  reject_unknown(obj, origin, "config",
                 {"theta0", "gamma", "tau", "safeguard_bound", "tol_feas", "tol_stat", "theta_max", "k_max",
                  "pg_max_iterations", "pg_tol"});
  AlmConfig cfg;
  if (const json *v = find(obj, "theta0")) cfg.theta0 = need_number(*v, origin, "config.theta0");
  if (const json *v = find(obj, "gamma")) cfg.gamma = need_number(*v, origin, "config.gamma");
  if (const json *v = find(obj, "tau")) cfg.tau = need_number(*v, origin, "config.tau");
  if (const json *v = find(obj, "safeguard_bound"))
    cfg.safeguard_bound = need_number(*v, origin, "config.safeguard_bound");
  if (const json *v = find(obj, "tol_feas")) cfg.tol_feas = need_number(*v, origin, "config.tol_feas");
  if (const json *v = find(obj, "tol_stat")) cfg.tol_stat = need_number(*v, origin, "config.tol_stat");
  if (const json *v = find(obj, "theta_max")) cfg.theta_max = need_number(*v, origin, "config.theta_max");
  if (const json *v = find(obj, "k_max")) cfg.k_max = need_int(*v, origin, "config.k_max");
  if (const json *v = find(obj, "pg_max_iterations"))
    cfg.pg.max_iterations = need_int(*v, origin, "config.pg_max_iterations");
  if (const json *v = find(obj, "pg_tol")) cfg.pg.tol = need_number(*v, origin, "config.pg_tol");
  return cfg;
}

void parse_qp_params(const json &obj, const std::string &origin, QpFamilyParams &qp) {
  reject_unknown(obj, origin, "parameters", {"n", "m"});
  if (const json *v = find(obj, "n")) qp.n = need_int(*v, origin, "parameters.n");
  if (const json *v = find(obj, "m")) qp.m = need_int(*v, origin, "parameters.m");
  if (qp.n < 1 || qp.n > 10) fail(origin, "convex-qp needs 1 <= n <= 10");
  if (qp.m < 0 || qp.m > 3) fail(origin, "convex-qp needs 0 <= m <= 3");
}

void parse_control_params(const json &obj, const std::string &origin, SparseControlParams &pr) {
  reject_unknown(obj, origin, "parameters", {"n", "p", "sigma", "target", "operator", "ua", "ub"});
  if (const json *v = find(obj, "n")) pr.n = need_int(*v, origin, "parameters.n");
  if (const json *v = find(obj, "p")) pr.p = need_number(*v, origin, "parameters.p");
  if (const json *v = find(obj, "sigma")) pr.sigma = need_number(*v, origin, "parameters.sigma");
  if (const json *v = find(obj, "ua")) pr.ua = need_number(*v, origin, "parameters.ua");
  if (const json *v = find(obj, "ub")) pr.ub = need_number(*v, origin, "parameters.ub");
  if (const json *v = find(obj, "target")) pr.target = target_from_string(need_string(*v, origin, "parameters.target"));
  if (const json *v = find(obj, "operator"))
    pr.op = forward_op_from_string(need_string(*v, origin, "parameters.operator"));
  pr.validate();
}

void parse_quadratic_params(const json &obj, const std::string &origin, QuadraticFamilyParams &qd) {
  reject_unknown(obj, origin, "parameters",
                 {"Q", "c", "box_lo", "box_hi", "rows", "rhs", "cone", "lp_p", "lp_weights"});
  const json *Q = find(obj, "Q");
  const json *c = find(obj, "c");
  if (!Q || !c) fail(origin, "custom-quadratic requires parameters.Q and parameters.c");
  qd.Q = need_matrix(*Q, origin, "parameters.Q");
  qd.c = need_vector(*c, origin, "parameters.c");
  Eigen::Index n = qd.Q.rows();
  if (qd.Q.cols() != n) fail(origin, "parameters.Q must be square");
  if ((qd.Q - qd.Q.transpose()).cwiseAbs().maxCoeff() > 1e-12) fail(origin, "parameters.Q must be symmetric");
  if (qd.c.size() != n) fail(origin, "parameters.c must match the dimension of Q");

  const json *lo = find(obj, "box_lo");
  const json *hi = find(obj, "box_hi");
  if (static_cast<bool>(lo) != static_cast<bool>(hi)) fail(origin, "box_lo and box_hi come together");
  if (lo) {
    qd.box_lo = need_vector(*lo, origin, "parameters.box_lo");
    qd.box_hi = need_vector(*hi, origin, "parameters.box_hi");
    if (qd.box_lo->size() != n || qd.box_hi->size() != n) fail(origin, "box bounds must have length n");
  }

  const json *rows = find(obj, "rows");
  const json *rhs = find(obj, "rhs");
  if (static_cast<bool>(rows) != static_cast<bool>(rhs)) fail(origin, "rows and rhs come together");
  if (rows) {
    qd.rows = need_matrix(*rows, origin, "parameters.rows");
    qd.rhs = need_vector(*rhs, origin, "parameters.rhs");
    if (qd.rows->cols() != n) fail(origin, "parameters.rows must have n columns");
    if (qd.rhs->size() != qd.rows->rows()) fail(origin, "parameters.rhs must match the row count");
  }
  if (const json *v = find(obj, "cone")) {
    qd.cone = need_string(*v, origin, "parameters.cone");
    if (qd.cone != "nonpositive" && qd.cone != "zero") fail(origin, "parameters.cone must be nonpositive or zero");
    if (!rows) fail(origin, "parameters.cone needs constraint rows");
  }

  const json *lpp = find(obj, "lp_p");
  const json *lpw = find(obj, "lp_weights");
  if (lpw && !lpp) fail(origin, "lp_weights needs lp_p");
  if (lpp) {
    qd.lp_p = need_number(*lpp, origin, "parameters.lp_p");
    qd.lp_weights = lpw ? need_vector(*lpw, origin, "parameters.lp_weights")
                        : Eigen::VectorXd(Eigen::VectorXd::Ones(n));
    if (qd.lp_weights->size() != n) fail(origin, "lp_weights must have length n");
  }
}

} // namespace

InstanceDocument parse_instance_text(const std::string &text, const std::string &origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    fail(origin, "JSON syntax error near line " + std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) fail(origin, "document must be an object");
  reject_unknown(doc, origin, "document", {"schema_version", "family", "seed", "name", "config", "parameters"});

  InstanceDocument out;
  out.raw_text = text;

  const json *ver = find(doc, "schema_version");
  if (!ver) fail(origin, "missing schema_version");
  out.schema_version = need_int(*ver, origin, "schema_version");
  if (out.schema_version != 1) fail(origin, "unsupported schema_version " + std::to_string(out.schema_version));

  const json *family = find(doc, "family");
  if (!family) fail(origin, "missing family");
  out.family = need_string(*family, origin, "family");

  if (const json *seed = find(doc, "seed")) {
    long long s = need_int(*seed, origin, "seed");
    if (s < 0) fail(origin, "seed must be nonnegative");
    out.seed = static_cast<unsigned>(s);
  }
  if (const json *name = find(doc, "name")) out.name = need_string(*name, origin, "name");
  if (out.name.empty()) {
    out.name = out.family;
    for (char &ch : out.name)
      if (ch == ':') ch = '-';
  }

  if (const json *cfg = find(doc, "config")) out.config = parse_config(*cfg, origin);

  json params = json::object();
  if (const json *p = find(doc, "parameters")) {
    if (!p->is_object()) fail(origin, "parameters must be an object");
    params = *p;
  }
  if (out.family == "builtin:example-5-1") {
    reject_unknown(params, origin, "parameters", {});
  } else if (out.family == "builtin:convex-qp") {
    parse_qp_params(params, origin, out.qp);
  } else if (out.family == "sparse-control") {
    parse_control_params(params, origin, out.control);
  } else if (out.family == "custom-quadratic") {
    parse_quadratic_params(params, origin, out.quadratic);
  } else {
    fail(origin, "unknown family '" + out.family + "'");
  }
  return out;
}

InstanceDocument load_instance(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  InstanceDocument doc = parse_instance_text(buf.str(), path);
  std::string fallback = doc.family;
  for (char &ch : fallback)
    if (ch == ':') ch = '-';
  std::string stem = std::filesystem::path(path).stem().string();
  if (doc.name == fallback && !stem.empty()) doc.name = stem;
  return doc;
}

ConvexQp make_convex_qp(int n, int m, unsigned seed) {
  if (n < 1 || n > 10) throw std::invalid_argument("convex-qp: n must lie in [1, 10]");
  if (m < 0 || m > 3) throw std::invalid_argument("convex-qp: m must lie in [0, 3]");

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> margin(0.1, 1.0);

  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = u(rng);
  ConvexQp qp;
  qp.Q = M.transpose() * M + n * Eigen::MatrixXd::Identity(n, n);
  qp.c.resize(n);
  for (int i = 0; i < n; ++i) qp.c[i] = u(rng);
  qp.R.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) qp.R(i, j) = u(rng);
  qp.r.resize(m);
  for (int i = 0; i < m; ++i) qp.r[i] = margin(rng); // 0 stays strictly feasible

  Eigen::MatrixXd Q = qp.Q;
  Eigen::VectorXd c = qp.c;
  qp.spec.f.n = n;
  qp.spec.f.value = [Q, c](const Eigen::VectorXd &x) { return 0.5 * x.dot(Q * x) + c.dot(x); };
  qp.spec.f.grad = [Q, c](const Eigen::VectorXd &x) { return Eigen::VectorXd(Q * x + c); };
  qp.spec.C = BoxSet::free(n);
  if (m > 0) {
    Eigen::MatrixXd R = qp.R;
    Eigen::VectorXd r = qp.r;
    SmoothMap G;
    G.n = n;
    G.m = m;
    G.value = [R, r](const Eigen::VectorXd &x) { return Eigen::VectorXd(R * x - r); };
    G.adjoint = [R](const Eigen::VectorXd &, const Eigen::VectorXd &w) { return Eigen::VectorXd(R.transpose() * w); };
    qp.spec.G = G;
    qp.spec.K = NonpositiveOrthant{m};
  }
  return qp;
}

ProblemSpec build_problem(const InstanceDocument &doc) {
  if (doc.family == "builtin:example-5-1") return degenerate_parabola_problem();
  if (doc.family == "builtin:convex-qp") return make_convex_qp(doc.qp.n, doc.qp.m, doc.seed).spec;
  if (doc.family == "sparse-control") return build_instance(doc.control).problem();

  const QuadraticFamilyParams &qd = doc.quadratic;
  Eigen::Index n = qd.Q.rows();
  ProblemSpec P;
  Eigen::MatrixXd Q = qd.Q;
  Eigen::VectorXd c = qd.c;
  P.f.n = n;
  P.f.value = [Q, c](const Eigen::VectorXd &x) { return 0.5 * x.dot(Q * x) + c.dot(x); };
  P.f.grad = [Q, c](const Eigen::VectorXd &x) { return Eigen::VectorXd(Q * x + c); };
  P.C = qd.box_lo ? BoxSet{*qd.box_lo, *qd.box_hi} : BoxSet::free(n);
  if (qd.rows) {
    Eigen::MatrixXd R = *qd.rows;
    Eigen::VectorXd r = *qd.rhs;
    SmoothMap G;
    G.n = n;
    G.m = R.rows();
    G.value = [R, r](const Eigen::VectorXd &x) { return Eigen::VectorXd(R * x - r); };
    G.adjoint = [R](const Eigen::VectorXd &, const Eigen::VectorXd &w) { return Eigen::VectorXd(R.transpose() * w); };
    P.G = G;
    if (qd.cone == "zero")
      P.K = ZeroSet{R.rows()};
    else
      P.K = NonpositiveOrthant{R.rows()};
  }
  if (qd.lp_p) P.q = LpSeparableTerm{*qd.lp_p, *qd.lp_weights};
  P.validate();
  return P;
}

Eigen::VectorXd initial_point(const InstanceDocument &doc) {
  if (doc.family == "builtin:example-5-1") return Eigen::VectorXd::Constant(1, 1.0);
  if (doc.family == "builtin:convex-qp") return Eigen::VectorXd::Zero(doc.qp.n);
  if (doc.family == "sparse-control") return Eigen::VectorXd::Zero(doc.control.n);
  return build_problem(doc).C.clamp(Eigen::VectorXd::Zero(doc.quadratic.Q.rows()));
}

} // namespace nonlip::cli
