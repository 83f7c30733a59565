#pragma once

#include <string>
#include <vector>

#include "sn2b/config.hpp"
#include "sn2b/runner.hpp"

namespace sn2b {

/// Sequential colormap heatmap (low = dark). Values are min-max scaled.
void write_heatmap_png(const std::string& path, const MatrixXd& values);

/// Diverging colormap heatmap centered at zero (blue-white-red).
void write_diverging_heatmap_png(const std::string& path, const MatrixXd& values);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

void write_line_plot_svg(const std::string& path, const std::vector<Series>& series,
                         const std::string& x_label, const std::string& y_label);

/// Renders the artifacts of a finished run: per-snapshot panels (joint
/// density, marginals, relative Wigner function) from the field dumps next to
/// the CSV, plus the entropy/Schmidt time-series plot.
void emit_run_plots(const ScenarioConfig& config);

/// Renders the scan heatmaps (PR2 and S_vN vs time and ratio, per profile
/// branch) and the peak-entanglement curve from a scan output directory.
void emit_scan_plots(const std::string& scan_dir);

}  // namespace sn2b
