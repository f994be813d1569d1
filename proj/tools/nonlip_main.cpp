#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "nonlip/cli/commands.hpp"

int main(int argc, char **argv) {
  using namespace nonlip::cli;
  CLI::App app{"augmented Lagrangian solver for composite problems with nonsmooth sparse terms"};
  app.require_subcommand(1);

  SolveFlags sf;
  auto *solve = app.add_subcommand("solve", "run the solver on an instance file");
  solve->add_option("--instance", sf.instance_path, "instance JSON file")->required();
  solve->add_option("--out", sf.out_dir, "output directory (default .)");
  solve->add_option("--theta0", sf.theta0, "initial penalty");
  solve->add_option("--gamma", sf.gamma, "penalty growth factor");
  solve->add_option("--tau", sf.tau, "progress ratio that keeps the penalty fixed");
  solve->add_option("--tol-feas", sf.tol_feas, "feasibility tolerance");
  solve->add_option("--tol-stat", sf.tol_stat, "stationarity tolerance");
  solve->add_option("--theta-max", sf.theta_max, "penalty cap");
  solve->add_option("--k-max", sf.k_max, "outer iteration cap");
  solve->add_option("--seed", sf.seed, "RNG seed override");

  ControlFlags cf;
  auto *control = app.add_subcommand("control", "solve the sparse control problem and verify optimality");
  control->add_option("--n", cf.n, "interior grid nodes");
  control->add_option("--p", cf.p, "sparsity exponent in (0,1)");
  control->add_option("--sigma", cf.sigma, "Tikhonov weight");
  control->add_option("--ua", cf.ua, "lower control bound");
  control->add_option("--ub", cf.ub, "upper control bound");
  control->add_option("--target", cf.target, "target: zero | hat | sine");
  control->add_option("--operator", cf.op, "forward operator: identity | laplace1d");
  control->add_option("--out", cf.out_dir, "output directory (default .)");

  DemoFlags df;
  auto *demo = app.add_subcommand("demo", "run a built-in worked example");
  demo->add_option("id", df.id, "demo id: 3.1 | 3.2 | 4.1 | 4.2 | 5.1")->required();
  demo->add_option("--out", df.out_dir, "directory for optional CSV point clouds");
  demo->add_option("--seed", df.seed, "sampling seed");

  BenchFlags bf;
  auto *bench = app.add_subcommand("bench", "run a suite of instances and tabulate results");
  bench->add_option("--instance", bf.suite_path, "suite JSON file")->required();
  bench->add_option("--out", bf.out_dir, "output directory (default .)");
  bench->add_option("--jobs", bf.jobs, "number of worker threads");

  std::string cert_path;
  auto *verify = app.add_subcommand("verify", "re-check a stationarity certificate file");
  verify->add_option("--instance", cert_path, "certificate JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(sf);
    if (control->parsed()) return cmd_control(cf);
    if (demo->parsed()) return cmd_demo(df);
    if (bench->parsed()) return cmd_bench(bf);
    if (verify->parsed()) return cmd_verify(cert_path);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
