#pragma once

#include <string>
#include <vector>

#include "sn2b/initial_states.hpp"
#include "sn2b/types.hpp"

namespace sn2b {

enum class SolverKind { Full, Hartree, Both };

/// Full description of one experiment; serializes to/from JSON.
struct ScenarioConfig {
  struct GridSpec {
    int N = 256;
    double L = 40.0;
  } grid;

  double epsilon = 0.2;
  Masses masses;
  Couplings couplings;

  struct InitialSpec {
    StateKind kind = StateKind::I;
    ProfileKind profile = ProfileKind::Gaussian;
    double R0 = 6.0;
    double sigma0 = 1.0;
  } initial;

  struct TimeSpec {
    double dt = 0.01;
    double t_final = 40.0;
    int sample_every = 25;
  } time;

  struct OutputSpec {
    std::string csv_path = "run.csv";
    int field_dump_every = 0;  // in samples; 0 disables dumps
    bool wigner = false;
    bool negativity = false;
  } outputs;

  SolverKind solver = SolverKind::Full;
};

struct ScanConfig {
  ScenarioConfig base;
  std::vector<double> mass_ratios = {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
};

/// Throws ConfigError with a description of the first violated constraint.
void validate(const ScenarioConfig& config);
void validate(const ScanConfig& scan);

std::string serialize(const ScenarioConfig& config);
std::string serialize(const ScanConfig& scan);
ScenarioConfig parse_scenario(const std::string& text);
ScanConfig parse_scan(const std::string& text);

ScenarioConfig load_scenario_file(const std::string& path);
ScanConfig load_scan_file(const std::string& path);

std::string to_string(StateKind kind);
std::string to_string(ProfileKind kind);
std::string to_string(SolverKind kind);
StateKind state_kind_from_string(const std::string& s);
ProfileKind profile_kind_from_string(const std::string& s);
SolverKind solver_kind_from_string(const std::string& s);

}  // namespace sn2b
