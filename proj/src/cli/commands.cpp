#include "nonlip/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "json.hpp"

#include "nonlip/cli/report.hpp"
#include "nonlip/sparse_control.hpp"
#include "nonlip/stationarity.hpp"
#include "nonlip/variational_lab.hpp"

namespace nonlip::cli {
namespace {

using json = nlohmann::json;
using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::filesystem::path out_path(const std::string &out_dir) {
  return std::filesystem::path(out_dir.empty() ? std::string(".") : out_dir);
}

AlmConfig merged_config(const InstanceDocument &doc, const SolveFlags &flags) {
  AlmConfig cfg = doc.config.value_or(AlmConfig{});
  if (flags.theta0) cfg.theta0 = *flags.theta0;
  if (flags.gamma) cfg.gamma = *flags.gamma;
  if (flags.tau) cfg.tau = *flags.tau;
  if (flags.tol_feas) cfg.tol_feas = *flags.tol_feas;
  if (flags.tol_stat) cfg.tol_stat = *flags.tol_stat;
  if (flags.theta_max) cfg.theta_max = *flags.theta_max;
  if (flags.k_max) cfg.k_max = *flags.k_max;
  cfg.validate();
  return cfg;
}

RunArtifacts run_instance(const InstanceDocument &doc, const AlmConfig &cfg, bool debug_trace) {
  ProblemSpec P = build_problem(doc);
  Eigen::VectorXd x0 = initial_point(doc);
  Eigen::VectorXd l0 = Eigen::VectorXd::Zero(P.m());
  TraceSink sink;
  if (debug_trace)
    sink = [](const AlmTraceRow &row) {
      log_debug("k=" + std::to_string(row.k) + " theta=" + format_double(row.theta) +
                " feas=" + format_double(row.feasibility) + " res=" + format_double(row.inner_residual));
    };
  RunArtifacts art;
  auto t0 = clock_type::now();
  art.result = run_alm(P, x0, l0, cfg, sink);
  art.solve_ms = ms_since(t0);
  auto t1 = clock_type::now();
  try {
    art.certificate = m_stat_min_residual(P, art.result.x, std::max(cfg.tol_feas, 1e-9));
    art.certified = true;
  } catch (const std::exception &e) {
    art.certificate_note = e.what();
  }
  art.certificate_ms = ms_since(t1);
  return art;
}

void write_solve_artifacts(const InstanceDocument &doc, const AlmConfig &cfg, const RunArtifacts &art,
                           const std::filesystem::path &dir) {
  write_text_file((dir / "report.json").string(), render_run_report(doc, cfg, art));
  write_text_file((dir / "trace.csv").string(), render_trace_csv(art.result.trace));
  if (art.certified)
    write_text_file((dir / "certificate.json").string(), render_certificate(doc, cfg, art.result, art.certificate));
}

std::string sanitize_name(std::string s) {
  for (char &c : s)
    if (c == ',' || c == '/' || c == '\\' || std::isspace(static_cast<unsigned char>(c))) c = '-';
  return s.empty() ? std::string("instance") : s;
}

std::string fmt_vec2(const lab::Vec2 &z) {
  return "(" + format_double(z.x()) + ", " + format_double(z.y()) + ")";
}

void write_demo_cloud(const std::filesystem::path &path, const lab::ImplicitSet2D &A, const lab::ImplicitSet2D &B,
                      const lab::Window &win, int res) {
  std::string csv = "x,y,dist_omega1,dist_omega2\n";
  for (int i = 0; i <= res; ++i) {
    double x = win.x_lo + (win.x_hi - win.x_lo) * i / res;
    for (int j = 0; j <= res; ++j) {
      double y = win.y_lo + (win.y_hi - win.y_lo) * j / res;
      lab::Vec2 z(x, y);
      csv += format_double(x) + "," + format_double(y) + "," + format_double(lab::dist(A, z)) + "," +
             format_double(lab::dist(B, z)) + "\n";
    }
  }
  write_text_file(path.string(), csv);
}

const char *pass_str(bool ok) { return ok ? "PASS" : "FAIL"; }

int demo_lsc_closed(const DemoFlags &) {
  // φ jumps down to 0 only at the boundary point 0 of Ω = U = [0,1]: the
  // relative liminf from inside stays at 1 ≥ inf = 0.
  lab::PiecewiseFn1D phi{{0.0}, {0.0, 1.0}};
  lab::FiniteUnion1D omega{{lab::Interval1D{0.0, 1.0, true, true}}};
  lab::Interval1D U{0.0, 1.0, true, true};
  auto r = lab::lsc_relative_estimate(phi, omega, U);
  bool ok = r.holds && r.lhs == 0.0 && r.rhs == 1.0;
  std::cout << "demo 3.1: lower semicontinuity of a step function relative to [0,1]\n";
  std::cout << "  lhs=" << format_double(r.lhs) << " rhs=" << format_double(r.rhs)
            << " holds=" << (r.holds ? "yes" : "no") << "\n";
  std::cout << "demo 3.1 " << pass_str(ok) << "\n";
  return ok ? 0 : 2;
}

int demo_lsc_open(const DemoFlags &) {
  // Ω = {0, 1}; the downward jump sits at the isolated point 1. A closed
  // window [−1,1] keeps 1 ∈ Ω ∩ U and the estimate holds; the open window
  // (−1,1) drops it from the infimum while sequences still reach it.
  lab::PiecewiseFn1D phi{{0.0}, {0.0, -1.0}};
  lab::FiniteUnion1D omega{{lab::Interval1D{0.0, 0.0, true, true}, lab::Interval1D{1.0, 1.0, true, true}}};
  lab::Interval1D closed{-1.0, 1.0, true, true};
  lab::Interval1D open{-1.0, 1.0, false, false};
  auto rc = lab::lsc_relative_estimate(phi, omega, closed);
  auto ro = lab::lsc_relative_estimate(phi, omega, open);
  bool ok = rc.holds && !ro.holds;
  std::cout << "demo 3.2: the same function over {0, 1}, closed vs open window\n";
  std::cout << "  U=[-1,1] lhs=" << format_double(rc.lhs) << " rhs=" << format_double(rc.rhs)
            << " holds=" << (rc.holds ? "yes" : "no") << " " << pass_str(rc.holds) << "\n";
  std::cout << "  U=(-1,1) lhs=" << format_double(ro.lhs) << " rhs=" << format_double(ro.rhs)
            << " holds=" << (ro.holds ? "yes" : "no") << (ro.holds ? " FAIL" : " FAIL (expected)") << "\n";
  std::cout << "demo 3.2 " << pass_str(ok) << "\n";
  return ok ? 0 : 2;
}

int demo_enlargement(const DemoFlags &flags) {
  // The ray along +x against the thinning region: every enlarged pair
  // intersects, no matter the shift, so each trial should end in a witness
  // and the probe should come back empty-handed.
  lab::Halfline ray;
  lab::ThinningRegion thin;
  lab::Window win{0.0, 20.0, -2.0, 2.0};
  bool ok = true;
  std::cout << "demo 4.1: enlarged intersections of the ray and the thinning region\n";
  auto report = [&](const lab::Vec2 &a, double rho) {
    auto g = lab::enlargement_gap(ray, thin, a, rho, win);
    ok = ok && g.witness;
    std::cout << "  a=" << fmt_vec2(a) << " rho=" << format_double(rho) << " gap=" << format_double(g.gap)
              << " witness=" << (g.witness ? "yes" : "no") << " z=" << fmt_vec2(g.z) << "\n";
  };
  report(lab::Vec2(-0.1, 0.05), 0.01);
  std::mt19937 rng(flags.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    double r = 0.5 * std::sqrt(unif(rng));
    double ang = 2.0 * std::acos(-1.0) * unif(rng);
    lab::Vec2 a(r * std::cos(ang), r * std::sin(ang));
    double rho = 1e-3 * std::pow(100.0, unif(rng));
    report(a, rho);
  }
  auto probe = lab::extremality_probe(ray, thin, 0.5, 10000, win, flags.seed);
  ok = ok && !probe.witnessed;
  if (probe.witnessed)
    std::cout << "  probe: separating pair a=" << fmt_vec2(probe.a) << " rho=" << format_double(probe.rho)
              << " gap=" << format_double(probe.gap) << " FAIL\n";
  else
    std::cout << "  probe: no separating pair found (budget 10000, evaluations " << probe.evaluations << ")\n";
  if (!flags.out_dir.empty())
    write_demo_cloud(out_path(flags.out_dir) / "demo41_cloud.csv", ray, thin, win, 120);
  std::cout << "demo 4.1 " << pass_str(ok) << "\n";
  return ok ? 0 : 2;
}

int demo_separation(const DemoFlags &flags) {
  // The kinked union against the lower halfplane: separable at every scale,
  // with dual normals converging to the two analytic limit configurations.
  bool ok = true;
  std::cout << "demo 4.2: separation of the kinked union from the lower halfplane\n";
  const lab::Vec2 flat1(0.0, -1.0), flat2(0.0, 1.0);
  const double s = std::sqrt(2.0) / 2.0;
  const lab::Vec2 slant1(-s, -s), slant2(0.0, s);
  for (double eps : {0.1, 0.01}) {
    auto duals = lab::separation_dual_vectors(eps);
    bool flat_ok = (duals[0].normal1 - flat1).norm() <= 1e-9 && (duals[0].normal2 - flat2).norm() <= 1e-9 &&
                   duals[0].cone_residual <= 1e-9;
    bool slant_ok = (duals[1].normal1 - slant1).norm() <= 1e-9 && (duals[1].normal2 - slant2).norm() <= 1e-9 &&
                    duals[1].cone_residual <= 1e-9;
    ok = ok && flat_ok && slant_ok;
    std::cout << "  eps=" << format_double(eps) << " flat: y1=" << fmt_vec2(duals[0].normal1)
              << " y2=" << fmt_vec2(duals[0].normal2) << " at " << fmt_vec2(duals[0].point1) << " "
              << pass_str(flat_ok) << "\n";
    std::cout << "  eps=" << format_double(eps) << " slant: y1=" << fmt_vec2(duals[1].normal1)
              << " y2=" << fmt_vec2(duals[1].normal2) << " at " << fmt_vec2(duals[1].point1) << " "
              << pass_str(slant_ok) << "\n";
  }
  auto fam = lab::separation_family_check(0.05, 0.01);
  ok = ok && fam.ok;
  std::cout << "  family check t=0.05 rho=0.01: min=" << format_double(fam.min_value)
            << " bound=" << format_double(fam.bound) << " " << pass_str(fam.ok) << "\n";
  if (!flags.out_dir.empty())
    write_demo_cloud(out_path(flags.out_dir) / "demo42_cloud.csv", lab::KinkedUnion{}, lab::LowerHalfplane{},
                     lab::Window{-2.0, 2.0, -2.0, 2.0}, 120);
  std::cout << "demo 4.2 " << pass_str(ok) << "\n";
  return ok ? 0 : 2;
}

int demo_degenerate(const DemoFlags &) {
  // Degenerate parabola: approximately stationary at 0 with multipliers
  // λₖ = k → ∞, while the exact residual at 0 stays pinned at 1 and the
  // qualification condition fails.
  ProblemSpec P = degenerate_parabola_problem();
  Eigen::VectorXd xbar = Eigen::VectorXd::Zero(1);
  std::vector<SeqEntry> seq;
  std::vector<int> ks = {1, 10, 100};
  for (int k : ks) seq.push_back(degenerate_parabola_entry(k));
  auto rep = approx_stat_check(P, seq, xbar);
  bool ok = rep.all_ok;
  std::cout << "demo 5.1: approximate stationarity for the degenerate parabola\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto &e = rep.entries[i];
    std::cout << "  k=" << ks[i] << " eps=" << format_double(e.eps) << " lambda=" << format_double(seq[i].lambda[0])
              << " memberships " << pass_str(e.ok()) << "\n";
  }
  auto mr = m_stat_min_residual(P, xbar);
  bool res_ok = std::abs(mr.residual - 1.0) <= 1e-9;
  ok = ok && res_ok;
  std::cout << "  exact residual at 0: " << format_double(mr.residual) << " " << pass_str(res_ok) << "\n";
  auto qr = gmfcq_check(P, xbar);
  bool q_ok = qr.verdict == QualVerdict::Fails;
  ok = ok && q_ok;
  std::cout << "  qualification check: " << to_string(qr.verdict) << " " << pass_str(q_ok) << "\n";
  std::cout << "demo 5.1 " << pass_str(ok) << "\n";
  return ok ? 0 : 2;
}

} // namespace

int cmd_solve(const SolveFlags &flags) {
  InstanceDocument doc = load_instance(flags.instance_path);
  if (flags.seed) doc.seed = *flags.seed;
  AlmConfig cfg = merged_config(doc, flags);
  log_info("solving " + doc.name + " (" + doc.family + ")");
  RunArtifacts art = run_instance(doc, cfg, log_level() >= 2);
  write_solve_artifacts(doc, cfg, art, out_path(flags.out_dir));
  log_info(doc.name + ": " + to_string(art.result.status) + " after " +
           std::to_string(art.result.outer_iterations) + " outer iterations, feasibility " +
           format_double(art.result.feasibility) + ", residual " + format_double(art.result.inner_residual));
  if (!art.certified) log_info("certificate skipped: " + art.certificate_note);
  return exit_code(art.result.status);
}

int cmd_control(const ControlFlags &flags) {
  SparseControlParams pr;
  pr.n = flags.n;
  pr.p = flags.p;
  pr.sigma = flags.sigma;
  pr.ua = flags.ua;
  pr.ub = flags.ub;
  pr.target = target_from_string(flags.target);
  pr.op = forward_op_from_string(flags.op);
  pr.validate();
  SparseControlInstance inst = build_instance(pr);
  auto t0 = clock_type::now();
  OCSolution sol = solve_oc(inst);
  double solve_ms = ms_since(t0);
  VerifyReport loose = verify_sparse_control(inst, sol.u, sol.eta, 1e-6, 1e-8);
  VerifyReport tight = verify_sparse_control(inst, sol.u, sol.eta, 1e-8, 1e-10);
  SparsityStats st = sparsity_stats(inst, sol.u, 1e-8);

  std::string csv = "x,u,y,yd,eta\n";
  for (int i = 0; i < inst.grid.n; ++i)
    csv += format_double(inst.grid.nodes[i]) + "," + format_double(sol.u[i]) + "," + format_double(sol.y[i]) + "," +
           format_double(inst.yd[i]) + "," + format_double(sol.eta[i]) + "\n";

  auto verify_block = [](const VerifyReport &v) {
    return json{{"ok", v.ok},
                {"grad_violation", v.grad_violation},
                {"free_violation", v.free_violation},
                {"lower_violation", v.lower_violation},
                {"upper_violation", v.upper_violation},
                {"free_nonzero", v.free_nonzero},
                {"zero_nodes", v.zero_nodes},
                {"lower_active", v.lower_active},
                {"upper_active", v.upper_active}};
  };
  json rep;
  rep["schema_version"] = 1;
  rep["parameters"] = {{"n", pr.n},     {"p", pr.p},           {"sigma", pr.sigma},   {"ua", pr.ua},
                       {"ub", pr.ub},   {"target", flags.target}, {"operator", flags.op}};
  rep["solution"] = {{"objective", sol.objective},
                     {"residual", sol.residual},
                     {"iterations", sol.iterations},
                     {"status", sol.status == PGStatus::Stationary ? "Stationary" : "IterLimit"}};
  rep["verify"] = {{"loose", verify_block(loose)}, {"tight", verify_block(tight)}};
  rep["sparsity"] = {{"support_count", st.support_count},
                     {"support_fraction", st.support_fraction},
                     {"lp_mass", st.lp_mass}};
  rep["timings_ms"] = {{"solve", solve_ms}};

  auto dir = out_path(flags.out_dir);
  write_text_file((dir / "solution.csv").string(), csv);
  write_text_file((dir / "control_report.json").string(), rep.dump(2) + "\n");
  std::cout << "control: status=" << (sol.status == PGStatus::Stationary ? "Stationary" : "IterLimit")
            << " objective=" << format_double(sol.objective) << " residual=" << format_double(sol.residual)
            << "\n";
  std::cout << "control: support_count=" << st.support_count
            << " support_fraction=" << format_double(st.support_fraction)
            << " verify=" << pass_str(loose.ok) << "\n";
  return sol.status == PGStatus::Stationary ? 0 : 3;
}

int cmd_demo(const DemoFlags &flags) {
  if (flags.id == "3.1") return demo_lsc_closed(flags);
  if (flags.id == "3.2") return demo_lsc_open(flags);
  if (flags.id == "4.1") return demo_enlargement(flags);
  if (flags.id == "4.2") return demo_separation(flags);
  if (flags.id == "5.1") return demo_degenerate(flags);
  throw std::runtime_error("unknown demo id '" + flags.id + "' (expected one of 3.1, 3.2, 4.1, 4.2, 5.1)");
}

int cmd_bench(const BenchFlags &flags) {
  namespace fs = std::filesystem;
  std::ifstream in(flags.suite_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open suite file '" + flags.suite_path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json suite;
  try {
    suite = json::parse(text);
  } catch (const json::parse_error &e) {
    throw std::runtime_error(flags.suite_path + ": JSON syntax error: " + e.what());
  }
  if (!suite.is_object()) throw std::runtime_error(flags.suite_path + ": suite must be a JSON object");
  for (const auto &el : suite.items())
    if (el.key() != "schema_version" && el.key() != "instances")
      throw std::runtime_error(flags.suite_path + ": unknown field '" + el.key() + "' in suite");
  if (!suite.contains("schema_version") || !suite["schema_version"].is_number_integer() ||
      suite["schema_version"].get<int>() != 1)
    throw std::runtime_error(flags.suite_path + ": schema_version must be the integer 1");
  if (!suite.contains("instances") || !suite["instances"].is_array())
    throw std::runtime_error(flags.suite_path + ": 'instances' must be an array");

  struct Entry {
    std::string name;
    std::optional<InstanceDocument> doc;
    std::string error;
  };
  std::vector<Entry> entries;
  fs::path base = fs::path(flags.suite_path).parent_path();
  int idx = 0;
  for (const auto &item : suite["instances"]) {
    Entry e;
    try {
      if (item.is_string()) {
        fs::path p = item.get<std::string>();
        if (p.is_relative()) p = base / p;
        e.doc = load_instance(p.string());
      } else if (item.is_object()) {
        e.doc = parse_instance_text(item.dump(), flags.suite_path + "#instances[" + std::to_string(idx) + "]");
      } else {
        throw std::runtime_error(flags.suite_path + ": instances entries must be file paths or instance objects");
      }
      e.name = e.doc->name;
    } catch (const std::exception &ex) {
      e.error = ex.what();
      e.name = item.is_string() ? fs::path(item.get<std::string>()).stem().string()
                                : "instance" + std::to_string(idx);
    }
    entries.push_back(std::move(e));
    ++idx;
  }

  struct Row {
    std::string status = "error";
    int outer = 0;
    double theta = 0.0, feas = 0.0, residual = 0.0, ms = 0.0;
    std::string note;
  };
  std::vector<Row> rows(entries.size());
  fs::path dir = out_path(flags.out_dir);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      Row &row = rows[i];
      auto t0 = clock_type::now();
      try {
        if (!entries[i].error.empty()) throw std::runtime_error(entries[i].error);
        const InstanceDocument &doc = *entries[i].doc;
        AlmConfig cfg = doc.config.value_or(AlmConfig{});
        cfg.validate();
        RunArtifacts art = run_instance(doc, cfg, false);
        char tag[16];
        std::snprintf(tag, sizeof(tag), "%02zu_", i);
        write_solve_artifacts(doc, cfg, art, dir / "instances" / (tag + sanitize_name(doc.name)));
        row.status = to_string(art.result.status);
        row.outer = art.result.outer_iterations;
        row.theta = art.result.theta;
        row.feas = art.result.feasibility;
        row.residual = art.result.inner_residual;
      } catch (const std::exception &ex) {
        row.status = "error";
        row.note = ex.what();
      }
      row.ms = ms_since(t0);
    }
  };
  int jobs = std::max(1, std::min(flags.jobs, 64));
  jobs = static_cast<int>(std::min<std::size_t>(jobs, std::max<std::size_t>(entries.size(), 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
  }

  std::string csv = "instance,status,outer_iterations,theta_final,feasibility,residual,time_ms\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Row &row = rows[i];
    csv += sanitize_name(entries[i].name) + "," + row.status + "," + std::to_string(row.outer) + "," +
           format_double(row.theta) + "," + format_double(row.feas) + "," + format_double(row.residual) + "," +
           format_double(row.ms) + "\n";
    std::string line = entries[i].name + ": " + row.status + " (" + format_double(row.ms) + " ms)";
    if (!row.note.empty()) line += " [" + row.note + "]";
    log_info(line);
  }
  write_text_file((dir / "summary.csv").string(), csv);
  return 0;
}

int cmd_verify(const std::string &certificate_path) {
  std::ifstream in(certificate_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open certificate file '" + certificate_path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw std::runtime_error(certificate_path + ": JSON syntax error: " + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error(certificate_path + ": certificate must be a JSON object");
  const std::vector<std::string> allowed = {"schema_version", "instance", "status", "tol_feas",
                                            "x",              "lambda",   "mu",     "xi",
                                            "residual"};
  for (const auto &el : doc.items())
    if (std::find(allowed.begin(), allowed.end(), el.key()) == allowed.end())
      throw std::runtime_error(certificate_path + ": unknown field '" + el.key() + "' in certificate");
  for (const auto &key : allowed)
    if (!doc.contains(key))
      throw std::runtime_error(certificate_path + ": missing field '" + key + "' in certificate");
  if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != 1)
    throw std::runtime_error(certificate_path + ": schema_version must be the integer 1");
  if (!doc["status"].is_string())
    throw std::runtime_error(certificate_path + ": 'status' must be a string");
  if (!doc["tol_feas"].is_number() || !doc["residual"].is_number())
    throw std::runtime_error(certificate_path + ": 'tol_feas' and 'residual' must be numbers");

  auto to_vec = [&](const char *name) {
    const json &arr = doc[name];
    if (!arr.is_array())
      throw std::runtime_error(certificate_path + ": '" + std::string(name) + "' must be an array of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
    Eigen::Index i = 0;
    for (const auto &item : arr) {
      if (!item.is_number())
        throw std::runtime_error(certificate_path + ": '" + std::string(name) + "' must be an array of numbers");
      v[i++] = item.get<double>();
    }
    return v;
  };

  InstanceDocument idoc = parse_instance_text(doc["instance"].dump(), certificate_path + "#instance");
  ProblemSpec P = build_problem(idoc);
  Eigen::VectorXd x = to_vec("x"), lambda = to_vec("lambda"), mu = to_vec("mu"), xi = to_vec("xi");
  if (x.size() != P.n() || mu.size() != P.n() || xi.size() != P.n() || lambda.size() != P.m())
    throw std::runtime_error(certificate_path + ": multiplier dimensions do not match the instance");
  double stored = doc["residual"].get<double>();
  double tol_feas = doc["tol_feas"].get<double>();

  MStatCertificate rc = m_stat_residual(P, x, lambda, mu, xi, std::max(tol_feas, 1e-8));
  bool members = rc.memberships_ok();
  bool agree = std::abs(rc.residual - stored) <= 1e-9 * std::max(1.0, std::abs(stored));
  bool minimal = true;
  std::string min_note;
  double fresh = std::numeric_limits<double>::quiet_NaN();
  try {
    fresh = m_stat_min_residual(P, x, std::max(tol_feas, 1e-9)).residual;
    minimal = fresh <= stored + 1e-9;
  } catch (const std::exception &e) {
    minimal = false;
    min_note = e.what();
  }
  bool ok = members && agree && minimal;

  std::cout << "verify " << certificate_path << " (" << idoc.name << ", status " << doc["status"].get<std::string>()
            << ")\n";
  std::cout << "  memberships: " << pass_str(members) << "\n";
  std::cout << "  residual: stored=" << format_double(stored) << " recomputed=" << format_double(rc.residual)
            << " agree=" << (agree ? "yes" : "no") << "\n";
  if (min_note.empty())
    std::cout << "  minimized residual: " << format_double(fresh) << " (<= stored + 1e-9: "
              << (minimal ? "yes" : "no") << ")\n";
  else
    std::cout << "  minimized residual: unavailable (" << min_note << ")\n";
  std::cout << "certificate " << pass_str(ok) << "\n";
  return ok ? 0 : 2;
}

} // namespace nonlip::cli
