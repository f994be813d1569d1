#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "nonlip/alm.hpp"
#include "nonlip/cli/instance.hpp"
#include "nonlip/cli/report.hpp"
#include "nonlip/lp_term.hpp"
#include "nonlip/sparse_control.hpp"
#include "nonlip/stationarity.hpp"
#include "nonlip/variational_lab.hpp"

namespace py = pybind11;
using namespace nonlip;

namespace {

lab::ImplicitSet2D set_by_name(const std::string &name) {
  if (name == "ray") return lab::Halfline{};
  if (name == "thinning") return lab::ThinningRegion{};
  if (name == "kinked-union") return lab::KinkedUnion{};
  if (name == "lower-halfplane") return lab::LowerHalfplane{};
  throw std::invalid_argument("unknown planar set '" + name +
                              "' (expected ray, thinning, kinked-union or lower-halfplane)");
}

std::string solve_instance_json(const std::string &text) {
  cli::InstanceDocument doc = cli::parse_instance_text(text, "<python>");
  AlmConfig cfg = doc.config.value_or(AlmConfig{});
  cfg.validate();
  ProblemSpec P = cli::build_problem(doc);
  cli::RunArtifacts art;
  art.result = run_alm(P, cli::initial_point(doc), Eigen::VectorXd::Zero(P.m()), cfg);
  try {
    art.certificate = m_stat_min_residual(P, art.result.x, std::max(cfg.tol_feas, 1e-9));
    art.certified = true;
  } catch (const std::exception &e) {
    art.certificate_note = e.what();
  }
  return cli::render_run_report(doc, cfg, art);
}

py::dict solve_control(int n, double p, double sigma, const std::string &target, const std::string &op,
                       double ua, double ub) {
  SparseControlParams prm;
  prm.n = n;
  prm.p = p;
  prm.sigma = sigma;
  prm.ua = ua;
  prm.ub = ub;
  prm.target = target_from_string(target);
  prm.op = forward_op_from_string(op);
  prm.validate();
  SparseControlInstance inst = build_instance(prm);
  OCSolution sol = solve_oc(inst);
  VerifyReport v = verify_sparse_control(inst, sol.u, sol.eta, 1e-6, 1e-8);
  SparsityStats st = sparsity_stats(inst, sol.u, 1e-8);
  py::dict d;
  d["x"] = inst.grid.nodes;
  d["u"] = sol.u;
  d["eta"] = sol.eta;
  d["y"] = sol.y;
  d["yd"] = inst.yd;
  d["objective"] = sol.objective;
  d["residual"] = sol.residual;
  d["iterations"] = sol.iterations;
  d["stationary"] = sol.status == PGStatus::Stationary;
  d["verified"] = v.ok;
  d["support_count"] = st.support_count;
  d["support_fraction"] = st.support_fraction;
  d["lp_mass"] = st.lp_mass;
  return d;
}

py::dict enlargement_gap_py(const std::string &A, const std::string &B, std::pair<double, double> a,
                            double rho, std::array<double, 4> window, int resolution, int levels) {
  lab::Window win{window[0], window[1], window[2], window[3]};
  lab::GapResult g =
      lab::enlargement_gap(set_by_name(A), set_by_name(B), lab::Vec2(a.first, a.second), rho, win, resolution, levels);
  py::dict d;
  d["gap"] = g.gap;
  d["witness"] = g.witness;
  d["z"] = std::make_pair(g.z.x(), g.z.y());
  d["window_warning"] = g.window_warning;
  d["evaluations"] = g.evaluations;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "core bindings: composite solver, scalar proximal maps, sparse control, planar set lab";

  m.def("version", [] { return std::string("0.1.0"); });

  m.def("prox_lp_scalar", &prox_lp_scalar, py::arg("v"), py::arg("w"), py::arg("p"),
        "argmin of 0.5*(t-v)^2 + w*|t|^p over t");
  m.def("prox_lp_box", &prox_lp_box, py::arg("v"), py::arg("w"), py::arg("p"), py::arg("lower"), py::arg("upper"),
        "the same objective restricted to [lower, upper]");

  m.def("solve_instance_json", &solve_instance_json, py::arg("text"),
        "solve an instance document (JSON text) and return the run report as JSON text");

  m.def("solve_control", &solve_control, py::arg("n") = 127, py::arg("p") = 0.5, py::arg("sigma") = 1e-4,
        py::arg("target") = "hat", py::arg("operator") = "laplace1d", py::arg("ua") = -30.0, py::arg("ub") = 30.0,
        "solve the sparse control problem and verify its optimality system");

  m.def("enlargement_gap", &enlargement_gap_py, py::arg("set1"), py::arg("set2"), py::arg("a"), py::arg("rho"),
        py::arg("window") = std::array<double, 4>{-10.0, 10.0, -10.0, 10.0}, py::arg("resolution") = 64,
        py::arg("levels") = 8,
        "grid-refined emptiness gap of (set1 + rho*B - a) against (set2 + rho*B) over the window");
}
