#include "sn2b/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

namespace sn2b {

namespace {

std::string csv_stem(const std::string& csv_path) {
  const auto pos = csv_path.rfind(".csv");
  return pos == std::string::npos ? csv_path : csv_path.substr(0, pos);
}

SingleProfile component_profile(const ScenarioConfig& config, const Grid1D& grid,
                                const KernelTable& kernel, double mass,
                                double center) {
  if (config.initial.profile == ProfileKind::Gaussian) {
    return gaussian_profile(grid, config.initial.sigma0, center, mass);
  }
  GroundStateOptions opts;
  opts.seed_sigma = config.initial.sigma0;
  GroundStateResult gs =
      ground_state_sn(grid, mass, config.couplings.kappa, kernel, opts);
  return translate_profile(gs.profile, grid, center);
}

}  // namespace

ScenarioSetup prepare_scenario(const ScenarioConfig& config) {
  validate(config);
  if (config.initial.kind != StateKind::I &&
      config.masses.mu1 != config.masses.mu2) {
    throw ConfigError("superposition configurations II/III/IV require equal masses");
  }
  ScenarioSetup s;
  s.grid = make_grid(config.grid.N, config.grid.L);
  s.kernel = make_kernel(s.grid, config.epsilon);
  const double half = config.initial.R0 / 2.0;
  s.left = component_profile(config, s.grid, s.kernel, config.masses.mu1, -half);
  s.right = component_profile(config, s.grid, s.kernel, config.masses.mu2, +half);
  s.assembled =
      assemble_state(config.initial.kind, s.left, s.right, s.grid, config.masses);
  s.plan = make_step_plan(s.grid, config.masses, config.couplings, s.kernel,
                          config.time.dt);
  return s;
}

namespace {

ScenarioResult run_full(const ScenarioConfig& config, const ScenarioSetup& setup,
                        CsvWriter* csv, const std::string& dump_stem) {
  ScenarioResult result;
  TwoBodyState state = setup.assembled.state;
  DiagnosticsOptions opts;
  opts.wigner_negativity = config.outputs.negativity;

  int sample_index = 0;
  auto sink = [&](const TwoBodyState& s) {
    DiagnosticsRecord rec = compute_record(s, setup.plan, opts);
    result.records.push_back(rec);
    if (csv) csv->write(rec);
    if (config.outputs.field_dump_every > 0 &&
        sample_index % config.outputs.field_dump_every == 0 && !dump_stem.empty()) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "_t%08.3f.sn2b", s.t);
      write_field_dump(dump_stem + buf, s);
    }
    ++sample_index;
  };

  evolve(state, setup.plan, config.time.t_final, config.time.sample_every, sink);
  result.summary = summarize(result.records);
  result.final_state = std::move(state);
  return result;
}

ScenarioResult run_hartree(const ScenarioConfig& config, const ScenarioSetup& setup,
                           CsvWriter* csv) {
  if (config.initial.kind != StateKind::I && config.initial.kind != StateKind::II) {
    throw ConfigError("the Hartree solver needs a product configuration (I or II)");
  }
  const Grid1D& grid = setup.grid;
  HartreePair pair;
  if (config.initial.kind == StateKind::I) {
    pair.psi1 = setup.left.amplitude;
    pair.psi2 = setup.right.amplitude;
  } else {
    ArrayXcd sum = setup.left.amplitude + setup.right.amplitude;
    sum /= std::sqrt(sum.abs2().sum() * grid.dx);
    pair.psi1 = sum;
    pair.psi2 = sum;
  }
  pair.grid = grid;
  pair.masses = config.masses;
  HartreePlan hplan = make_hartree_plan(grid, config.masses, config.couplings,
                                        setup.kernel, config.time.dt);

  ScenarioResult result;
  DiagnosticsOptions opts;
  opts.wigner_negativity = config.outputs.negativity;
  auto sample = [&]() {
    TwoBodyState embedded;
    embedded.psi = pair.psi1.matrix() * pair.psi2.matrix().transpose();
    embedded.grid = grid;
    embedded.masses = config.masses;
    embedded.t = pair.t;
    DiagnosticsRecord rec = compute_record(embedded, setup.plan, opts);
    rec.energy = hartree_energy(pair, hplan);
    result.records.push_back(rec);
    if (csv) csv->write(rec);
  };

  const int n_steps =
      static_cast<int>(std::llround(config.time.t_final / config.time.dt));
  sample();
  for (int n = 1; n <= n_steps; ++n) {
    hartree_step(pair, hplan);
    if (n % config.time.sample_every == 0 || n == n_steps) sample();
  }
  result.summary = summarize(result.records);
  result.final_state.psi = pair.psi1.matrix() * pair.psi2.matrix().transpose();
  result.final_state.grid = grid;
  result.final_state.masses = config.masses;
  result.final_state.t = pair.t;
  return result;
}

void write_comparison_csv(const std::string& path,
                          const std::vector<HartreeComparisonRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open comparison output: " + path);
  out << "t,S_vN_full,L2_marginal_dist,E_full,E_hartree\n";
  out.precision(15);
  for (const auto& r : rows) {
    out << r.t << "," << r.s_vn_full << "," << r.l2_marginal_dist << ","
        << r.e_full << "," << r.e_hartree << "\n";
  }
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
  ScenarioSetup setup = prepare_scenario(config);
  const std::string stem = csv_stem(config.outputs.csv_path);

  ScenarioResult result;
  if (config.solver == SolverKind::Full || config.solver == SolverKind::Both) {
    CsvWriter csv(config.outputs.csv_path, config.outputs.negativity);
    result = run_full(config, setup, &csv, stem);
  }
  if (config.solver == SolverKind::Hartree || config.solver == SolverKind::Both) {
    const std::string path = config.solver == SolverKind::Hartree
                                 ? config.outputs.csv_path
                                 : stem + "_hartree.csv";
    CsvWriter csv(path, config.outputs.negativity);
    ScenarioResult hres = run_hartree(config, setup, &csv);
    if (config.solver == SolverKind::Hartree) result = std::move(hres);
  }
  if (config.solver == SolverKind::Both) {
    SingleProfile f1 = setup.left;
    SingleProfile f2 = setup.right;
    if (config.initial.kind == StateKind::II) {
      ArrayXcd sum = setup.left.amplitude + setup.right.amplitude;
      sum /= std::sqrt(sum.abs2().sum() * setup.grid.dx);
      f1.amplitude = sum;
      f2.amplitude = sum;
    }
    auto rows = hartree_vs_full(f1, f2, setup.grid, config.masses, config.couplings,
                                setup.kernel, config.time.dt, config.time.t_final,
                                config.time.sample_every);
    write_comparison_csv(stem + "_compare.csv", rows);
  }
  write_summary(stem + "_summary.json", result.summary);
  return result;
}

ScenarioResult run_scenario_in_memory(const ScenarioConfig& config) {
  ScenarioSetup setup = prepare_scenario(config);
  return run_full(config, setup, nullptr, "");
}

ScanResult run_scan(const ScanConfig& scan, const std::string& out_dir) {
  validate(scan);
  if (scan.base.initial.kind != StateKind::I) {
    throw ConfigError("the mass-ratio scan uses the localized product configuration");
  }
  std::filesystem::create_directories(out_dir);

  ScanResult result;
  for (ProfileKind profile : {ProfileKind::Gaussian, ProfileKind::StationarySN}) {
    for (double ratio : scan.mass_ratios) {
      ScanPointResult point;
      point.ratio = ratio;
      point.profile = profile;
      result.points.push_back(point);
    }
  }

  int workers = 1;
  if (const char* env = std::getenv("SN2B_WORKERS")) {
    workers = std::max(1, std::atoi(env));
  }

  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < result.points.size();
         i = next.fetch_add(1)) {
      ScanPointResult& point = result.points[i];
      try {
        ScenarioConfig c = scan.base;
        c.initial.profile = point.profile;
        c.masses.mu1 = point.ratio;  // mu2 = 1 held fixed
        c.masses.mu2 = 1.0;
        ScenarioResult r = run_scenario_in_memory(c);
        for (const auto& rec : r.records) {
          point.t.push_back(rec.t);
          point.s_vn.push_back(rec.s_vn);
          point.pr2.push_back(rec.pr2);
          point.peak_s_vn = std::max(point.peak_s_vn, rec.s_vn);
          point.peak_pr2 = std::max(point.peak_pr2, rec.pr2);
        }
      } catch (const std::exception& e) {
        point.failed = true;
        point.error = e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < workers - 1; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  // Per-point time series plus the aggregated peak table, written in
  // deterministic (profile, ratio) order.
  for (const auto& point : result.points) {
    if (point.failed) continue;
    char name[96];
    std::snprintf(name, sizeof(name), "scan_%s_ratio_%.3f.csv",
                  to_string(point.profile).c_str(), point.ratio);
    std::ofstream out(std::filesystem::path(out_dir) / name);
    out << "t,S_vN,PR2\n";
    out.precision(15);
    for (size_t i = 0; i < point.t.size(); ++i) {
      out << point.t[i] << "," << point.s_vn[i] << "," << point.pr2[i] << "\n";
    }
  }
  std::ofstream peaks(std::filesystem::path(out_dir) / "scan_peaks.csv");
  peaks << "ratio,profile,peak_S_vN,peak_PR2\n";
  peaks.precision(15);
  for (const auto& point : result.points) {
    if (point.failed) {
      peaks << point.ratio << "," << to_string(point.profile) << ",failed,failed\n";
      continue;
    }
    peaks << point.ratio << "," << to_string(point.profile) << ","
          << point.peak_s_vn << "," << point.peak_pr2 << "\n";
  }
  return result;
}

std::vector<ConvergenceRow> run_convergence(const ScenarioConfig& config) {
  validate(config);
  auto run = [&](const ScenarioConfig& c) { return run_scenario_in_memory(c); };

  ScenarioResult base = run(config);
  std::vector<ConvergenceRow> rows;
  auto add = [&](const std::string& name, const ScenarioResult& r) {
    ConvergenceRow row;
    row.refinement = name;
    row.peak_s_vn = r.summary.peak_s_vn;
    row.delta_peak_s_vn = std::abs(r.summary.peak_s_vn - base.summary.peak_s_vn);
    row.final_d_rel = r.summary.final_d_rel;
    row.delta_final_d_rel = std::abs(r.summary.final_d_rel - base.summary.final_d_rel);
    row.final_dx_mean = r.summary.final_dx_mean;
    row.delta_final_dx_mean =
        std::abs(r.summary.final_dx_mean - base.summary.final_dx_mean);
    rows.push_back(row);
  };
  add("baseline", base);

  {
    ScenarioConfig c = config;
    c.grid.N *= 2;
    add("N_doubled", run(c));
  }
  {
    // Extend the domain at fixed dx (N scales with L).
    ScenarioConfig c = config;
    const double dx = config.grid.L / config.grid.N;
    c.grid.L = config.grid.L * 1.5;
    c.grid.N = static_cast<int>(std::llround(c.grid.L / dx));
    if (c.grid.N % 2 != 0) ++c.grid.N;
    add("L_extended", run(c));
  }
  {
    ScenarioConfig c = config;
    c.time.dt /= 2.0;
    c.time.sample_every *= 2;
    add("dt_halved", run(c));
  }
  return rows;
}

}  // namespace sn2b
