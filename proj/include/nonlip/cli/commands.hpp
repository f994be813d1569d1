#pragma once

#include <optional>
#include <string>

#include "nonlip/cli/instance.hpp"

// Subcommand entry points. Each returns the process exit code: 0 success
// (Converged for solves), 2 InfeasibleStationary or a failed check, 3 iteration
// or penalty limits; errors are reported by throwing and exit with 1.

namespace nonlip::cli {

struct SolveFlags {
  std::string instance_path;
  std::string out_dir = ".";
  std::optional<double> theta0, gamma, tau, tol_feas, tol_stat, theta_max;
  std::optional<int> k_max;
  std::optional<unsigned> seed;
};

int cmd_solve(const SolveFlags &flags);

struct ControlFlags {
  int n = 127;
  double p = 0.5, sigma = 1e-4, ua = -30.0, ub = 30.0;
  std::string target = "hat";
  std::string op = "laplace1d";
  std::string out_dir = ".";
};

int cmd_control(const ControlFlags &flags);

struct DemoFlags {
  std::string id;      // 3.1 | 3.2 | 4.1 | 4.2 | 5.1
  std::string out_dir; // empty: skip CSV point clouds
  unsigned seed = 7;
};

int cmd_demo(const DemoFlags &flags);

struct BenchFlags {
  std::string suite_path;
  std::string out_dir = ".";
  int jobs = 1;
};

int cmd_bench(const BenchFlags &flags);

int cmd_verify(const std::string &certificate_path);

} // namespace nonlip::cli
