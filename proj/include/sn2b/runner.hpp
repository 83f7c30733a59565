#pragma once

#include <string>
#include <vector>

#include "sn2b/config.hpp"
#include "sn2b/hartree.hpp"
#include "sn2b/io.hpp"

namespace sn2b {

/// Everything needed to start a run: grid, kernel, component profiles for
/// both particles, the assembled state and the step plan.
struct ScenarioSetup {
  Grid1D grid;
  KernelTable kernel;
  SingleProfile left;   // particle-1 component at -R0/2
  SingleProfile right;  // particle-2 component at +R0/2
  AssembledState assembled;
  StepPlan plan;
};

ScenarioSetup prepare_scenario(const ScenarioConfig& config);

struct ScenarioResult {
  std::vector<DiagnosticsRecord> records;
  RunSummary summary;
  TwoBodyState final_state;
};

/// Runs the configured solver(s), writing the CSV time series, optional field
/// dumps and a JSON summary next to the CSV. Returns the full-model result
/// (or the Hartree result when solver = hartree).
ScenarioResult run_scenario(const ScenarioConfig& config);

/// In-memory variant without any file output; full model only.
ScenarioResult run_scenario_in_memory(const ScenarioConfig& config);

struct ScanPointResult {
  double ratio = 0.0;
  ProfileKind profile = ProfileKind::Gaussian;
  double peak_s_vn = 0.0;
  double peak_pr2 = 0.0;
  std::vector<double> t;
  std::vector<double> s_vn;
  std::vector<double> pr2;
  bool failed = false;
  std::string error;
};

struct ScanResult {
  std::vector<ScanPointResult> points;  // deterministic (profile, ratio) order
};

/// Mass-ratio scan over both profile branches; scan points run in a worker
/// pool sized by the SN2B_WORKERS environment variable (default 1).
/// Per-point failures are recorded and the scan continues.
ScanResult run_scan(const ScanConfig& scan, const std::string& out_dir);

struct ConvergenceRow {
  std::string refinement;
  double peak_s_vn = 0.0;
  double delta_peak_s_vn = 0.0;
  double final_d_rel = 0.0;
  double delta_final_d_rel = 0.0;
  double final_dx_mean = 0.0;
  double delta_final_dx_mean = 0.0;
};

/// Reruns the scenario with N doubled, the domain extended at fixed dx, and
/// dt halved, reporting the shift of the headline observables per refinement.
std::vector<ConvergenceRow> run_convergence(const ScenarioConfig& config);

}  // namespace sn2b
