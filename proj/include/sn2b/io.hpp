#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "sn2b/diagnostics.hpp"

namespace sn2b {

/// CSV column order is fixed; the three negativity columns appear only when
/// requested at construction and then every row must carry them.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, bool with_negativity);
  void write(const DiagnosticsRecord& rec);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  bool with_negativity_;
  std::ofstream out_;
};

std::string csv_header(bool with_negativity);
std::string csv_row(const DiagnosticsRecord& rec, bool with_negativity);

/// Binary field dump: magic "SN2B", one version byte, N (uint32 LE),
/// L and t (doubles), then N*N complex values (re, im doubles), x1-major.
void write_field_dump(const std::string& path, const TwoBodyState& state);
TwoBodyState read_field_dump(const std::string& path);

struct RunSummary {
  double peak_s_vn = 0.0;
  double peak_s_vn_time = 0.0;
  double final_dx_mean = 0.0;
  double final_d_rel = 0.0;
  double max_energy_drift = 0.0;  // relative
  double max_norm_drift = 0.0;
};

RunSummary summarize(const std::vector<DiagnosticsRecord>& records);
void write_summary(const std::string& path, const RunSummary& summary);

}  // namespace sn2b
