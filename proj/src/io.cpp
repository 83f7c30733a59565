#include "sn2b/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sn2b {

namespace {

void check_record(const DiagnosticsRecord& r) {
  if (!(r.s_vn >= -1e-12) || !(r.s_lin >= -1e-12 && r.s_lin < 1.0) ||
      r.lambda1 < r.lambda2 || r.lambda2 < r.lambda3 ||
      !(std::abs(r.norm - 1.0) < 1e-3)) {
    throw NumericalError("diagnostics record violates its invariants at t=" +
                         std::to_string(r.t));
  }
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(15);
  ss << v;
  return ss.str();
}

}  // namespace

std::string csv_header(bool with_negativity) {
  std::string h =
      "t,norm,E_total,E_kin,E_pair,E_self1,E_self2,S_vN,S_L,"
      "lambda1,lambda2,lambda3,dx_mean,d_rel,PR1,PR2";
  if (with_negativity) h += ",neg1,neg2,neg_rel";
  return h;
}

std::string csv_row(const DiagnosticsRecord& r, bool with_negativity) {
  check_record(r);
  std::string row = fmt(r.t) + "," + fmt(r.norm) + "," + fmt(r.energy.total()) +
                    "," + fmt(r.energy.kinetic) + "," + fmt(r.energy.pair) + "," +
                    fmt(r.energy.self1) + "," + fmt(r.energy.self2) + "," +
                    fmt(r.s_vn) + "," + fmt(r.s_lin) + "," + fmt(r.lambda1) + "," +
                    fmt(r.lambda2) + "," + fmt(r.lambda3) + "," + fmt(r.dx_mean) +
                    "," + fmt(r.d_rel) + "," + fmt(r.pr1) + "," + fmt(r.pr2);
  if (with_negativity) {
    if (!r.neg1 || !r.neg2 || !r.neg_rel) {
      throw NumericalError("negativity columns requested but not computed at t=" +
                           std::to_string(r.t));
    }
    row += "," + fmt(*r.neg1) + "," + fmt(*r.neg2) + "," + fmt(*r.neg_rel);
  }
  return row;
}

CsvWriter::CsvWriter(const std::string& path, bool with_negativity)
    : path_(path), with_negativity_(with_negativity), out_(path) {
  if (!out_) throw std::ios_base::failure("cannot open CSV output: " + path_);
  out_ << csv_header(with_negativity_) << "\n";
}

void CsvWriter::write(const DiagnosticsRecord& rec) {
  out_ << csv_row(rec, with_negativity_) << "\n";
  if (!out_) throw std::ios_base::failure("write failed on CSV output: " + path_);
}

void write_field_dump(const std::string& path, const TwoBodyState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open field dump output: " + path);
  out.write("SN2B", 4);
  const char version = 1;
  out.write(&version, 1);
  const std::uint32_t n = static_cast<std::uint32_t>(state.grid.N);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&state.grid.L), 8);
  out.write(reinterpret_cast<const char*>(&state.t), 8);
  for (int i1 = 0; i1 < state.grid.N; ++i1) {
    for (int i2 = 0; i2 < state.grid.N; ++i2) {
      const Complex v = state.psi(i1, i2);
      const double re = v.real(), im = v.imag();
      out.write(reinterpret_cast<const char*>(&re), 8);
      out.write(reinterpret_cast<const char*>(&im), 8);
    }
  }
  if (!out) throw std::ios_base::failure("short write on field dump: " + path);
}

TwoBodyState read_field_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open field dump: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "SN2B", 4) != 0) {
    throw std::ios_base::failure("not a field dump (bad magic): " + path);
  }
  char version = 0;
  in.read(&version, 1);
  if (version != 1) throw std::ios_base::failure("unsupported dump version");
  std::uint32_t n = 0;
  double length = 0, t = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&length), 8);
  in.read(reinterpret_cast<char*>(&t), 8);

  TwoBodyState state;
  state.grid = make_grid(static_cast<int>(n), length);
  state.t = t;
  state.psi.resize(n, n);
  for (std::uint32_t i1 = 0; i1 < n; ++i1) {
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      double re = 0, im = 0;
      in.read(reinterpret_cast<char*>(&re), 8);
      in.read(reinterpret_cast<char*>(&im), 8);
      state.psi(i1, i2) = Complex(re, im);
    }
  }
  if (!in) throw std::ios_base::failure("truncated field dump: " + path);
  return state;
}

RunSummary summarize(const std::vector<DiagnosticsRecord>& records) {
  RunSummary s;
  if (records.empty()) return s;
  const double e0 = records.front().energy.total();
  for (const auto& r : records) {
    if (r.s_vn > s.peak_s_vn) {
      s.peak_s_vn = r.s_vn;
      s.peak_s_vn_time = r.t;
    }
    if (e0 != 0.0) {
      s.max_energy_drift =
          std::max(s.max_energy_drift, std::abs(r.energy.total() - e0) / std::abs(e0));
    }
    s.max_norm_drift = std::max(s.max_norm_drift, std::abs(r.norm - 1.0));
  }
  s.final_dx_mean = records.back().dx_mean;
  s.final_d_rel = records.back().d_rel;
  return s;
}

void write_summary(const std::string& path, const RunSummary& s) {
  nlohmann::json j{
      {"peak_S_vN", s.peak_s_vn},
      {"peak_S_vN_time", s.peak_s_vn_time},
      {"final_dx_mean", s.final_dx_mean},
      {"final_d_rel", s.final_d_rel},
      {"max_energy_drift", s.max_energy_drift},
      {"max_norm_drift", s.max_norm_drift},
  };
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open summary output: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace sn2b
