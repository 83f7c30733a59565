#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sn2b/plot.hpp"
#include "sn2b/runner.hpp"

namespace {

using namespace sn2b;

// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct ScenarioFlags {
  std::string config_path;
  ScenarioConfig config;
  std::string kind = "I";
  std::string profile = "gaussian";
  std::string solver = "full";
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file (overrides flags)");
  cmd->add_option("--N", f.config.grid.N, "grid points per axis");
  cmd->add_option("--L", f.config.grid.L, "domain length");
  cmd->add_option("--epsilon", f.config.epsilon, "kernel softening");
  cmd->add_option("--mu1", f.config.masses.mu1, "mass of particle 1");
  cmd->add_option("--mu2", f.config.masses.mu2, "mass of particle 2");
  cmd->add_option("--kappa", f.config.couplings.kappa, "self-gravity coupling");
  cmd->add_option("--gamma", f.config.couplings.gamma, "pair-gravity coupling");
  cmd->add_option("--kind", f.kind, "initial configuration I|II|III|IV");
  cmd->add_option("--profile", f.profile, "component profile gaussian|stationary");
  cmd->add_option("--R0", f.config.initial.R0, "initial mean separation");
  cmd->add_option("--sigma0", f.config.initial.sigma0, "width parameter");
  cmd->add_option("--dt", f.config.time.dt, "time step");
  cmd->add_option("--t-final", f.config.time.t_final, "final time");
  cmd->add_option("--sample-every", f.config.time.sample_every,
                  "diagnostics cadence in steps");
  cmd->add_option("--csv", f.config.outputs.csv_path, "CSV output path");
  cmd->add_option("--dump-every", f.config.outputs.field_dump_every,
                  "field dump cadence in samples (0 = off)");
  cmd->add_flag("--negativity", f.config.outputs.negativity,
                "track Wigner negativities (slow)");
  cmd->add_option("--solver", f.solver, "full|hartree|both");
}

ScenarioConfig resolve(const ScenarioFlags& f) {
  if (!f.config_path.empty()) return load_scenario_file(f.config_path);
  ScenarioConfig c = f.config;
  c.initial.kind = state_kind_from_string(f.kind);
  c.initial.profile = profile_kind_from_string(f.profile);
  c.solver = solver_kind_from_string(f.solver);
  validate(c);
  return c;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"two-body self-gravitating wavefunction simulator"};
  app.require_subcommand(1);

  // ground-state
  auto* gs_cmd = app.add_subcommand("ground-state",
                                    "solve the single-particle stationary profile");
  int gs_n = 256;
  double gs_length = 40.0, gs_eps = 0.2, gs_mu = 1.0, gs_kappa = 1.0;
  GroundStateOptions gs_opts;
  std::string gs_out;
  gs_cmd->add_option("--N", gs_n);
  gs_cmd->add_option("--L", gs_length);
  gs_cmd->add_option("--epsilon", gs_eps);
  gs_cmd->add_option("--mu", gs_mu);
  gs_cmd->add_option("--kappa", gs_kappa);
  gs_cmd->add_option("--sigma0", gs_opts.seed_sigma);
  gs_cmd->add_option("--dtau", gs_opts.dtau);
  gs_cmd->add_option("--tol", gs_opts.tol);
  gs_cmd->add_option("--output", gs_out, "CSV output for the profile (x,re,im)");

  // run
  auto* run_cmd = app.add_subcommand("run", "run one scenario");
  ScenarioFlags run_flags;
  add_scenario_flags(run_cmd, run_flags);

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "mass-ratio scan (both profiles)");
  ScenarioFlags scan_flags;
  add_scenario_flags(scan_cmd, scan_flags);
  std::vector<double> ratios = {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  std::string scan_dir = "scan_out";
  std::string scan_config_path;
  scan_cmd->add_option("--ratios", ratios, "mass ratios mu1/mu2 (mu2 = 1)");
  scan_cmd->add_option("--out-dir", scan_dir, "output directory");
  scan_cmd->add_option("--scan-config", scan_config_path, "scan JSON config file");

  // converge
  auto* conv_cmd = app.add_subcommand("converge", "grid/domain/time-step refinements");
  ScenarioFlags conv_flags;
  add_scenario_flags(conv_cmd, conv_flags);
  std::string conv_out = "convergence_report.csv";
  conv_cmd->add_option("--output", conv_out, "report CSV path");

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "render plots from run/scan artifacts");
  ScenarioFlags plot_flags;
  add_scenario_flags(plot_cmd, plot_flags);
  std::string plot_scan_dir;
  plot_cmd->add_option("--scan-dir", plot_scan_dir, "scan directory to plot instead");

  // compare-hartree
  auto* cmp_cmd = app.add_subcommand("compare-hartree",
                                     "full model vs Hartree mean field");
  ScenarioFlags cmp_flags;
  add_scenario_flags(cmp_cmd, cmp_flags);
  std::string cmp_out = "hartree_compare.csv";
  cmp_cmd->add_option("--output", cmp_out, "comparison CSV path");

  CLI11_PARSE(app, argc, argv);

  if (gs_cmd->parsed()) {
    Grid1D grid = make_grid(gs_n, gs_length);
    KernelTable kernel = make_kernel(grid, gs_eps);
    GroundStateResult result = ground_state_sn(grid, gs_mu, gs_kappa, kernel, gs_opts);
    std::printf("omega = %.12g\nresidual = %.3g\niterations = %d\n", result.omega,
                result.residual, result.iterations);
    if (!gs_out.empty()) {
      std::ofstream out(gs_out);
      if (!out) throw std::ios_base::failure("cannot open " + gs_out);
      out << "x,re,im\n";
      out.precision(15);
      for (int j = 0; j < grid.N; ++j) {
        out << grid.x(j) << "," << result.profile.amplitude(j).real() << ","
            << result.profile.amplitude(j).imag() << "\n";
      }
    }
    return 0;
  }

  if (run_cmd->parsed()) {
    ScenarioConfig config = resolve(run_flags);
    ScenarioResult result = run_scenario(config);
    std::printf("peak S_vN = %.6f at t = %.3f\n", result.summary.peak_s_vn,
                result.summary.peak_s_vn_time);
    std::printf("max |E drift| = %.3g, max |norm drift| = %.3g\n",
                result.summary.max_energy_drift, result.summary.max_norm_drift);
    return 0;
  }

  if (scan_cmd->parsed()) {
    ScanConfig scan;
    if (!scan_config_path.empty()) {
      scan = load_scan_file(scan_config_path);
    } else {
      scan.base = resolve(scan_flags);
      scan.mass_ratios = ratios;
    }
    ScanResult result = run_scan(scan, scan_dir);
    bool any_failed = false;
    for (const auto& point : result.points) {
      if (point.failed) {
        any_failed = true;
        std::fprintf(stderr, "ratio %.3f (%s) failed: %s\n", point.ratio,
                     to_string(point.profile).c_str(), point.error.c_str());
      } else {
        std::printf("ratio %.3f (%s): peak S_vN = %.4f, peak PR2 = %.4f\n",
                    point.ratio, to_string(point.profile).c_str(), point.peak_s_vn,
                    point.peak_pr2);
      }
    }
    return any_failed ? kExitNumerical : 0;
  }

  if (conv_cmd->parsed()) {
    ScenarioConfig config = resolve(conv_flags);
    auto rows = run_convergence(config);
    std::ofstream out(conv_out);
    if (!out) throw std::ios_base::failure("cannot open " + conv_out);
    out << "refinement,peak_S_vN,delta_peak_S_vN,final_d_rel,delta_final_d_rel,"
           "final_dx_mean,delta_final_dx_mean\n";
    out.precision(15);
    for (const auto& r : rows) {
      out << r.refinement << "," << r.peak_s_vn << "," << r.delta_peak_s_vn << ","
          << r.final_d_rel << "," << r.delta_final_d_rel << "," << r.final_dx_mean
          << "," << r.delta_final_dx_mean << "\n";
      std::printf("%-12s peak S_vN = %.8f (delta %.2e), final d_rel delta %.2e\n",
                  r.refinement.c_str(), r.peak_s_vn, r.delta_peak_s_vn,
                  r.delta_final_d_rel);
    }
    return 0;
  }

  if (plot_cmd->parsed()) {
    if (!plot_scan_dir.empty()) {
      emit_scan_plots(plot_scan_dir);
    } else {
      emit_run_plots(resolve(plot_flags));
    }
    return 0;
  }

  if (cmp_cmd->parsed()) {
    ScenarioConfig config = resolve(cmp_flags);
    ScenarioSetup setup = prepare_scenario(config);
    SingleProfile f1 = setup.left;
    SingleProfile f2 = setup.right;
    if (config.initial.kind == StateKind::II) {
      ArrayXcd sum = setup.left.amplitude + setup.right.amplitude;
      sum /= std::sqrt(sum.abs2().sum() * setup.grid.dx);
      f1.amplitude = sum;
      f2.amplitude = sum;
    } else if (config.initial.kind != StateKind::I) {
      throw ConfigError("compare-hartree needs a product configuration (I or II)");
    }
    auto rows = hartree_vs_full(f1, f2, setup.grid, config.masses, config.couplings,
                                setup.kernel, config.time.dt, config.time.t_final,
                                config.time.sample_every);
    std::ofstream out(cmp_out);
    if (!out) throw std::ios_base::failure("cannot open " + cmp_out);
    out << "t,S_vN_full,L2_marginal_dist,E_full,E_hartree\n";
    out.precision(15);
    for (const auto& r : rows) {
      out << r.t << "," << r.s_vn_full << "," << r.l2_marginal_dist << ","
          << r.e_full << "," << r.e_hartree << "\n";
    }
    std::printf("final S_vN(full) = %.6f, final L2 marginal distance = %.3g\n",
                rows.back().s_vn_full, rows.back().l2_marginal_dist);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
