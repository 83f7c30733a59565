#include "sn2b/fft.hpp"

#include <unsupported/Eigen/FFT>

namespace sn2b {

namespace {

Eigen::FFT<double>& plan() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

ArrayXcd fft(const ArrayXcd& in) {
  VectorXcd v = in.matrix();
  VectorXcd out;
  plan().fwd(out, v);
  return out.array();
}

ArrayXcd ifft(const ArrayXcd& in) {
  VectorXcd v = in.matrix();
  VectorXcd out;
  plan().inv(out, v);
  return out.array();
}

void fft2_inplace(MatrixXcd& a) {
  auto& f = plan();
  const Eigen::Index n = a.rows();
  VectorXcd in(n), out(n);
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    in = a.col(c);
    f.fwd(out, in);
    a.col(c) = out;
  }
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    in = a.row(r);
    f.fwd(out, in);
    a.row(r) = out;
  }
}

void ifft2_inplace(MatrixXcd& a) {
  auto& f = plan();
  const Eigen::Index n = a.rows();
  VectorXcd in(n), out(n);
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    in = a.col(c);
    f.inv(out, in);
    a.col(c) = out;
  }
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    in = a.row(r);
    f.inv(out, in);
    a.row(r) = out;
  }
}

ArrayXd spectral_shift(const ArrayXd& f, const Grid1D& grid, double a) {
  ArrayXcd spec = fft(f.cast<Complex>());
  const int N = grid.N;
  for (int j = 0; j < N; ++j) {
    if (j == N / 2) {
      spec(j) *= std::cos(grid.k(j) * a);  // keep the Nyquist mode real-symmetric
    } else {
      spec(j) *= std::exp(Complex(0.0, -grid.k(j) * a));
    }
  }
  return ifft(spec).real();
}

}  // namespace sn2b
