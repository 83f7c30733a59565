#include "sn2b/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <png.h>

namespace sn2b {

namespace fs = std::filesystem;

namespace {

void save_png(const std::string& path, int width, int height,
              const std::vector<unsigned char>& rgb) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::ios_base::failure("cannot open PNG output: " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw std::ios_base::failure("libpng failure writing " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int row = 0; row < height; ++row) {
    png_write_row(png, const_cast<unsigned char*>(&rgb[row * width * 3]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

struct Rgb {
  unsigned char r, g, b;
};

Rgb sequential_color(double v) {  // v in [0,1], dark violet -> yellow
  static const double stops[5][3] = {{0.0, 0.0, 0.2},
                                     {0.3, 0.0, 0.5},
                                     {0.8, 0.2, 0.3},
                                     {0.95, 0.6, 0.1},
                                     {1.0, 1.0, 0.6}};
  v = std::clamp(v, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(v));
  const double f = v - i;
  auto mix = [&](int c) {
    return static_cast<unsigned char>(
        255.0 * (stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
  };
  return {mix(0), mix(1), mix(2)};
}

Rgb diverging_color(double v) {  // v in [-1,1], blue -> white -> red
  v = std::clamp(v, -1.0, 1.0);
  const double a = std::abs(v);
  const double r = v > 0 ? 1.0 : 1.0 - a;
  const double g = 1.0 - a;
  const double b = v < 0 ? 1.0 : 1.0 - a;
  return {static_cast<unsigned char>(255 * r), static_cast<unsigned char>(255 * g),
          static_cast<unsigned char>(255 * b)};
}

template <typename ColorFn>
void heatmap(const std::string& path, const MatrixXd& values, ColorFn color) {
  const int h = static_cast<int>(values.rows());
  const int w = static_cast<int>(values.cols());
  std::vector<unsigned char> rgb(static_cast<size_t>(w) * h * 3);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      // flip vertically so the first row ends up at the bottom
      const Rgb c = color(values(h - 1 - row, col));
      const size_t o = (static_cast<size_t>(row) * w + col) * 3;
      rgb[o] = c.r;
      rgb[o + 1] = c.g;
      rgb[o + 2] = c.b;
    }
  }
  save_png(path, w, h, rgb);
}

}  // namespace

void write_heatmap_png(const std::string& path, const MatrixXd& values) {
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  const double span = hi - lo > 0 ? hi - lo : 1.0;
  heatmap(path, values,
          [&](double v) { return sequential_color((v - lo) / span); });
}

void write_diverging_heatmap_png(const std::string& path, const MatrixXd& values) {
  const double amp = std::max(std::abs(values.minCoeff()), std::abs(values.maxCoeff()));
  const double scale = amp > 0 ? amp : 1.0;
  heatmap(path, values, [&](double v) { return diverging_color(v / scale); });
}

void write_line_plot_svg(const std::string& path, const std::vector<Series>& series,
                         const std::string& x_label, const std::string& y_label) {
  const int width = 720, height = 480;
  const int ml = 70, mr = 20, mt = 20, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
    for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};

  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open SVG output: " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<rect x='" << ml << "' y='" << mt << "' width='" << width - ml - mr
      << "' height='" << height - mt - mb
      << "' fill='none' stroke='black'/>\n";
  for (int tick = 0; tick <= 5; ++tick) {
    const double xv = xmin + tick * (xmax - xmin) / 5;
    const double yv = ymin + tick * (ymax - ymin) / 5;
    out << "<text x='" << px(xv) << "' y='" << height - mb + 18
        << "' font-size='11' text-anchor='middle'>" << std::round(xv * 100) / 100
        << "</text>\n"
        << "<text x='" << ml - 6 << "' y='" << py(yv) + 4
        << "' font-size='11' text-anchor='end'>" << std::round(yv * 1000) / 1000
        << "</text>\n";
  }
  out << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 12
      << "' font-size='13' text-anchor='middle'>" << x_label << "</text>\n"
      << "<text x='16' y='" << (mt + height - mb) / 2
      << "' font-size='13' text-anchor='middle' transform='rotate(-90 16 "
      << (mt + height - mb) / 2 << ")'>" << y_label << "</text>\n";
  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    out << "<polyline fill='none' stroke='" << palette[si % 6]
        << "' stroke-width='1.5' points='";
    for (size_t i = 0; i < s.x.size(); ++i) {
      out << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    out << "'/>\n"
        << "<text x='" << width - mr - 8 << "' y='" << mt + 18 + 16 * si
        << "' font-size='12' text-anchor='end' fill='" << palette[si % 6] << "'>"
        << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

namespace {

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
  std::vector<double> get(const std::string& name) const {
    const int c = column(name);
    if (c < 0) throw std::ios_base::failure("CSV is missing column " + name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& row : rows) v.push_back(row[c]);
    return v;
  }
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("missing artifact file: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::ios_base::failure("empty CSV: " + path);
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::vector<double> values;
    while (std::getline(row, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (...) {
        values.push_back(std::nan(""));
      }
    }
    if (values.size() == table.columns.size()) table.rows.push_back(values);
  }
  return table;
}

std::string csv_stem(const std::string& csv_path) {
  const auto pos = csv_path.rfind(".csv");
  return pos == std::string::npos ? csv_path : csv_path.substr(0, pos);
}

}  // namespace

void emit_run_plots(const ScenarioConfig& config) {
  const std::string stem = csv_stem(config.outputs.csv_path);
  CsvTable table = read_csv(config.outputs.csv_path);

  std::vector<Series> entropy_series;
  entropy_series.push_back({"S_vN", table.get("t"), table.get("S_vN")});
  entropy_series.push_back({"lambda1", table.get("t"), table.get("lambda1")});
  entropy_series.push_back({"lambda2", table.get("t"), table.get("lambda2")});
  entropy_series.push_back({"lambda3", table.get("t"), table.get("lambda3")});
  write_line_plot_svg(stem + "_timeseries.svg", entropy_series, "t",
                      "S_vN / Schmidt eigenvalues");

  if (table.column("neg_rel") >= 0) {
    std::vector<Series> neg;
    neg.push_back({"neg1", table.get("t"), table.get("neg1")});
    neg.push_back({"neg2", table.get("t"), table.get("neg2")});
    neg.push_back({"neg_rel", table.get("t"), table.get("neg_rel")});
    write_line_plot_svg(stem + "_negativity.svg", neg, "t", "Wigner negativity");
  } else {
    std::fprintf(stderr, "note: no negativity columns in %s, skipping that panel\n",
                 config.outputs.csv_path.c_str());
  }

  // Snapshot panels from whatever field dumps the run left behind.
  const fs::path dir = fs::path(stem).parent_path().empty()
                           ? fs::path(".")
                           : fs::path(stem).parent_path();
  const std::string prefix = fs::path(stem).filename().string() + "_t";
  std::vector<fs::path> dumps;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) == 0 && entry.path().extension() == ".sn2b") {
      dumps.push_back(entry.path());
    }
  }
  std::sort(dumps.begin(), dumps.end());
  if (dumps.empty()) {
    std::fprintf(stderr, "note: no field dumps next to %s, skipping snapshots\n",
                 config.outputs.csv_path.c_str());
  }
  for (const auto& dump : dumps) {
    TwoBodyState state = read_field_dump(dump.string());
    state.masses = config.masses;
    const std::string base = dump.string().substr(0, dump.string().size() - 5);
    write_heatmap_png(base + "_joint.png", state.psi.cwiseAbs2());

    auto [rho1, rho2] = marginals(state);
    std::vector<double> xs(state.grid.x.data(), state.grid.x.data() + state.grid.N);
    std::vector<Series> marg;
    marg.push_back({"rho1", xs, {rho1.data(), rho1.data() + rho1.size()}});
    marg.push_back({"rho2", xs, {rho2.data(), rho2.data() + rho2.size()}});
    write_line_plot_svg(base + "_marginals.svg", marg, "x", "density");

    WignerFunction wrel = wigner_relative(state);
    write_diverging_heatmap_png(base + "_wrel.png", wrel.w.transpose());
  }
}

void emit_scan_plots(const std::string& scan_dir) {
  const fs::path dir(scan_dir);
  CsvTable peaks = read_csv((dir / "scan_peaks.csv").string());

  for (const char* profile : {"gaussian", "stationary"}) {
    std::vector<fs::path> files;
    const std::string prefix = std::string("scan_") + profile + "_ratio_";
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind(prefix, 0) == 0 && entry.path().extension() == ".csv") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) continue;

    MatrixXd svn_map, pr_map;
    for (size_t i = 0; i < files.size(); ++i) {
      CsvTable t = read_csv(files[i].string());
      auto svn = t.get("S_vN");
      auto pr2 = t.get("PR2");
      if (i == 0) {
        svn_map.resize(files.size(), svn.size());
        pr_map.resize(files.size(), pr2.size());
      }
      for (size_t j = 0; j < svn.size() && j < static_cast<size_t>(svn_map.cols()); ++j) {
        svn_map(i, j) = svn[j];
        pr_map(i, j) = pr2[j];
      }
    }
    write_heatmap_png((dir / (std::string("heatmap_svn_") + profile + ".png")).string(),
                      svn_map);
    write_heatmap_png((dir / (std::string("heatmap_pr2_") + profile + ".png")).string(),
                      pr_map);
  }

  // Peak curve, one series per profile branch.
  std::map<std::string, Series> curves;
  const int rc = peaks.column("ratio");
  const int pc = peaks.column("peak_S_vN");
  std::ifstream in((dir / "scan_peaks.csv").string());
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < 4 || cells[2] == "failed") continue;
    Series& s = curves[cells[1]];
    s.label = cells[1];
    s.x.push_back(std::stod(cells[rc]));
    s.y.push_back(std::stod(cells[pc]));
  }
  std::vector<Series> series;
  for (auto& [name, s] : curves) series.push_back(s);
  write_line_plot_svg((dir / "peak_svn_vs_ratio.svg").string(), series,
                      "mass ratio mu1/mu2", "peak S_vN");
}

}  // namespace sn2b
