#include "nonlip/cli/report.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace nonlip::cli {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd &v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json config_to_json(const AlmConfig &cfg) {
  return json{{"theta0", cfg.theta0},
              {"gamma", cfg.gamma},
              {"tau", cfg.tau},
              {"safeguard_bound", cfg.safeguard_bound},
              {"tol_feas", cfg.tol_feas},
              {"tol_stat", cfg.tol_stat},
              {"theta_max", cfg.theta_max},
              {"k_max", cfg.k_max},
              {"subsolver", cfg.subsolver == SubsolverKind::ProxGradient ? "prox-gradient" : "brute-force"},
              {"pg", json{{"max_iterations", cfg.pg.max_iterations}, {"tol", cfg.pg.tol}}}};
}

json instance_to_json(const InstanceDocument &doc) {
  json inst{{"name", doc.name}, {"family", doc.family}, {"seed", doc.seed}};
  if (doc.family == "builtin:convex-qp") inst["parameters"] = json{{"n", doc.qp.n}, {"m", doc.qp.m}};
  if (doc.family == "sparse-control") {
    const SparseControlParams &pr = doc.control;
    inst["parameters"] = json{{"n", pr.n},
                              {"p", pr.p},
                              {"sigma", pr.sigma},
                              {"ua", pr.ua},
                              {"ub", pr.ub},
                              {"target", pr.target == TargetKind::Zero ? "zero" : (pr.target == TargetKind::Hat ? "hat" : "sine")},
                              {"operator", pr.op == ForwardOp::Identity ? "identity" : "laplace1d"}};
  }
  if (doc.family == "custom-quadratic")
    inst["parameters"] = json{{"n", doc.quadratic.Q.rows()},
                              {"m", doc.quadratic.rows ? doc.quadratic.rows->rows() : 0},
                              {"lp", doc.quadratic.lp_p.has_value()}};
  return inst;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, end);
}

std::string render_trace_csv(const std::vector<AlmTraceRow> &trace) {
  std::string out = "k,theta,v_progress,inner_iterations,inner_residual,lambda_inf,"
                    "safeguard_inf,objective,feasibility\n";
  for (const AlmTraceRow &row : trace) {
    out += std::to_string(row.k);
    out += ',';
    out += format_double(row.theta);
    out += ',';
    out += format_double(row.v_progress);
    out += ',';
    out += std::to_string(row.inner_iterations);
    out += ',';
    out += format_double(row.inner_residual);
    out += ',';
    out += format_double(row.lambda_inf);
    out += ',';
    out += format_double(row.safeguard_inf);
    out += ',';
    out += format_double(row.objective);
    out += ',';
    out += format_double(row.feasibility);
    out += '\n';
  }
  return out;
}

std::string render_run_report(const InstanceDocument &doc, const AlmConfig &cfg, const RunArtifacts &art) {
  const AlmResult &res = art.result;
  json report{{"schema_version", 1},
              {"instance", instance_to_json(doc)},
              {"config", config_to_json(cfg)},
              {"result", json{{"status", to_string(res.status)},
                              {"outer_iterations", res.outer_iterations},
                              {"theta_final", res.theta},
                              {"objective", res.objective},
                              {"feasibility", res.feasibility},
                              {"inner_residual", res.inner_residual},
                              {"lambda_inf", res.lambda.size() ? res.lambda.cwiseAbs().maxCoeff() : 0.0},
                              {"x", vector_to_json(res.x)},
                              {"lambda", vector_to_json(res.lambda)}}},
              {"timings_ms", json{{"solve", art.solve_ms},
                                  {"certificate", art.certificate_ms},
                                  {"total", art.solve_ms + art.certificate_ms}}}};
  if (art.certified) {
    report["certificate"] = json{{"residual", art.certificate.residual},
                                 {"lambda", vector_to_json(art.certificate.lambda)},
                                 {"mu", vector_to_json(art.certificate.mu)},
                                 {"xi", vector_to_json(art.certificate.xi)}};
  } else {
    report["certificate"] = nullptr;
    report["certificate_note"] = art.certificate_note;
  }
  return report.dump(2) + "\n";
}

std::string render_certificate(const InstanceDocument &doc, const AlmConfig &cfg, const AlmResult &res,
                               const MinResidualResult &cert) {
  json out{{"schema_version", 1},
           {"instance", json::parse(doc.raw_text)},
           {"status", to_string(res.status)},
           {"tol_feas", cfg.tol_feas},
           {"x", vector_to_json(res.x)},
           {"lambda", vector_to_json(cert.lambda)},
           {"mu", vector_to_json(cert.mu)},
           {"xi", vector_to_json(cert.xi)},
           {"residual", cert.residual}};
  return out.dump(2) + "\n";
}

int exit_code(AlmStatus status) {
  switch (status) {
  case AlmStatus::Converged:
    return 0;
  case AlmStatus::InfeasibleStationary:
    return 2;
  case AlmStatus::IterLimit:
  case AlmStatus::PenaltyLimit:
    return 3;
  }
  return 1;
}

int log_level() {
  static const int level = [] {
    const char *env = std::getenv("NONLIP_LOG");
    if (!env) return 1;
    std::string s(env);
    if (s == "quiet") return 0;
    if (s == "info") return 1;
    if (s == "debug") return 2;
    std::cerr << "NONLIP_LOG must be quiet, info, or debug; using info\n";
    return 1;
  }();
  return level;
}

void log_info(const std::string &line) {
  if (log_level() >= 1) std::cerr << line << '\n';
}

void log_debug(const std::string &line) {
  if (log_level() >= 2) std::cerr << line << '\n';
}

void write_text_file(const std::string &path, const std::string &content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

} // namespace nonlip::cli
