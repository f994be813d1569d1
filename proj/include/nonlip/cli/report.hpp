#pragma once

#include <string>
#include <vector>

#include "nonlip/cli/instance.hpp"
#include "nonlip/stationarity.hpp"

// Report and trace rendering for the command-line front end. All floating
// point output uses shortest round-trip decimal serialization so identical
// runs produce byte-identical files.

namespace nonlip::cli {

std::string format_double(double v);

// k,theta,v_progress,inner_iterations,inner_residual,lambda_inf,
// safeguard_inf,objective,feasibility
std::string render_trace_csv(const std::vector<AlmTraceRow> &trace);

struct RunArtifacts {
  AlmResult result;
  MinResidualResult certificate;
  bool certified = false; // terminal point feasible enough to certify
  std::string certificate_note;
  double solve_ms = 0.0, certificate_ms = 0.0;
};

// RunReport: resolved config echo, result summary, certificate block, and
// per-phase timings. Every number is recomputable from the trace.
std::string render_run_report(const InstanceDocument &doc, const AlmConfig &cfg, const RunArtifacts &art);

// Standalone certificate with the instance document embedded so it can be
// re-checked later without the original file.
std::string render_certificate(const InstanceDocument &doc, const AlmConfig &cfg, const AlmResult &res,
                               const MinResidualResult &cert);

int exit_code(AlmStatus status); // 0 Converged, 2 InfeasibleStationary, 3 limits

// NONLIP_LOG ∈ {quiet, info, debug} → 0, 1, 2; unset means info.
int log_level();
void log_info(const std::string &line);
void log_debug(const std::string &line);

void write_text_file(const std::string &path, const std::string &content);

} // namespace nonlip::cli
