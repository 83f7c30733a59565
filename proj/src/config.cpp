#include "sn2b/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sn2b {

using nlohmann::json;

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::I: return "I";
    case StateKind::II: return "II";
    case StateKind::III: return "III";
    case StateKind::IV: return "IV";
  }
  return "I";
}

std::string to_string(ProfileKind kind) {
  return kind == ProfileKind::Gaussian ? "gaussian" : "stationary";
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Full: return "full";
    case SolverKind::Hartree: return "hartree";
    case SolverKind::Both: return "both";
  }
  return "full";
}

StateKind state_kind_from_string(const std::string& s) {
  if (s == "I") return StateKind::I;
  if (s == "II") return StateKind::II;
  if (s == "III") return StateKind::III;
  if (s == "IV") return StateKind::IV;
  throw ConfigError("unknown initial state kind '" + s + "' (expected I|II|III|IV)");
}

ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "gaussian") return ProfileKind::Gaussian;
  if (s == "stationary") return ProfileKind::StationarySN;
  throw ConfigError("unknown profile kind '" + s + "' (expected gaussian|stationary)");
}

SolverKind solver_kind_from_string(const std::string& s) {
  if (s == "full") return SolverKind::Full;
  if (s == "hartree") return SolverKind::Hartree;
  if (s == "both") return SolverKind::Both;
  throw ConfigError("unknown solver '" + s + "' (expected full|hartree|both)");
}

void validate(const ScenarioConfig& c) {
  if (c.grid.N < 8 || c.grid.N % 2 != 0)
    throw ConfigError("grid.N must be even and >= 8");
  if (!(c.grid.L > 0)) throw ConfigError("grid.L must be positive");
  if (!(c.epsilon > 0)) throw ConfigError("epsilon must be positive");
  if (!(c.masses.mu1 > 0) || !(c.masses.mu2 > 0))
    throw ConfigError("masses must be positive");
  if (c.couplings.kappa < 0 || c.couplings.gamma < 0)
    throw ConfigError("couplings must be non-negative");
  if (!(c.initial.sigma0 > 0)) throw ConfigError("initial.sigma0 must be positive");
  if (c.initial.R0 >= c.grid.L / 2.0)
    throw ConfigError("initial.R0 must be below L/2 to avoid wrap-around");
  if (c.initial.R0 < 0) throw ConfigError("initial.R0 must be non-negative");
  if (!(c.time.dt > 0)) throw ConfigError("time.dt must be positive");
  if (!(c.time.t_final > 0)) throw ConfigError("time.t_final must be positive");
  if (c.time.sample_every < 1) throw ConfigError("time.sample_every must be >= 1");
  if (c.initial.profile == ProfileKind::StationarySN &&
      !(c.couplings.kappa * c.masses.mu1 * c.masses.mu1 > 0 &&
        c.couplings.kappa * c.masses.mu2 * c.masses.mu2 > 0))
    throw ConfigError("stationary profiles need kappa*mu^2 > 0 for both particles");
}

void validate(const ScanConfig& scan) {
  validate(scan.base);
  if (scan.mass_ratios.empty()) throw ConfigError("scan ratio list is empty");
  for (double r : scan.mass_ratios) {
    if (r < 1.0) throw ConfigError("scan mass ratios must be >= 1");
  }
}

namespace {

json to_json(const ScenarioConfig& c) {
  return json{
      {"grid", {{"N", c.grid.N}, {"L", c.grid.L}}},
      {"epsilon", c.epsilon},
      {"masses", {{"mu1", c.masses.mu1}, {"mu2", c.masses.mu2}}},
      {"couplings", {{"kappa", c.couplings.kappa}, {"gamma", c.couplings.gamma}}},
      {"initial",
       {{"kind", to_string(c.initial.kind)},
        {"profile", to_string(c.initial.profile)},
        {"R0", c.initial.R0},
        {"sigma0", c.initial.sigma0}}},
      {"time",
       {{"dt", c.time.dt},
        {"t_final", c.time.t_final},
        {"sample_every", c.time.sample_every}}},
      {"outputs",
       {{"csv_path", c.outputs.csv_path},
        {"field_dump_every", c.outputs.field_dump_every},
        {"wigner", c.outputs.wigner},
        {"negativity", c.outputs.negativity}}},
      {"solver", to_string(c.solver)},
  };
}

ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig c;
  try {
    c.grid.N = j.at("grid").at("N").get<int>();
    c.grid.L = j.at("grid").at("L").get<double>();
    c.epsilon = j.value("epsilon", c.epsilon);
    c.masses.mu1 = j.at("masses").at("mu1").get<double>();
    c.masses.mu2 = j.at("masses").at("mu2").get<double>();
    c.couplings.kappa = j.at("couplings").at("kappa").get<double>();
    c.couplings.gamma = j.at("couplings").at("gamma").get<double>();
    const auto& init = j.at("initial");
    c.initial.kind = state_kind_from_string(init.at("kind").get<std::string>());
    c.initial.profile =
        profile_kind_from_string(init.at("profile").get<std::string>());
    c.initial.R0 = init.at("R0").get<double>();
    c.initial.sigma0 = init.at("sigma0").get<double>();
    const auto& time = j.at("time");
    c.time.dt = time.at("dt").get<double>();
    c.time.t_final = time.at("t_final").get<double>();
    c.time.sample_every = time.at("sample_every").get<int>();
    if (j.contains("outputs")) {
      const auto& out = j.at("outputs");
      c.outputs.csv_path = out.value("csv_path", c.outputs.csv_path);
      c.outputs.field_dump_every =
          out.value("field_dump_every", c.outputs.field_dump_every);
      c.outputs.wigner = out.value("wigner", c.outputs.wigner);
      c.outputs.negativity = out.value("negativity", c.outputs.negativity);
    }
    c.solver = solver_kind_from_string(j.value("solver", "full"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  validate(c);
  return c;
}

}  // namespace

std::string serialize(const ScenarioConfig& config) {
  return to_json(config).dump(2) + "\n";
}

std::string serialize(const ScanConfig& scan) {
  json j{{"base", to_json(scan.base)}, {"mass_ratios", scan.mass_ratios}};
  return j.dump(2) + "\n";
}

ScenarioConfig parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

ScanConfig parse_scan(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ScanConfig scan;
  try {
    scan.base = scenario_from_json(j.at("base"));
    if (j.contains("mass_ratios")) {
      scan.mass_ratios = j.at("mass_ratios").get<std::vector<double>>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scan config: ") + e.what());
  }
  validate(scan);
  return scan;
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

ScenarioConfig load_scenario_file(const std::string& path) {
  return parse_scenario(slurp(path));
}

ScanConfig load_scan_file(const std::string& path) {
  return parse_scan(slurp(path));
}

}  // namespace sn2b
