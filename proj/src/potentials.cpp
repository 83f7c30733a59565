#include "sn2b/potentials.hpp"

#include <cmath>

#include "sn2b/fft.hpp"

namespace sn2b {

double kernel_eval(double r, double epsilon, double L) {
  if (!(epsilon > 0.0)) {
    throw ConfigError("kernel_eval: epsilon must be positive");
  }
  const double d = periodic_min_distance(r, L);
  return 1.0 / std::sqrt(d * d + epsilon * epsilon);
}

KernelTable make_kernel(const Grid1D& grid, double epsilon) {
  KernelTable table;
  table.epsilon = epsilon;
  table.samples.resize(grid.N);
  for (int j = 0; j < grid.N; ++j) {
    table.samples(j) = kernel_eval(j * grid.dx, epsilon, grid.L);
  }
  table.spectrum = fft(table.samples.cast<Complex>());
  return table;
}

ArrayXd self_potential(const ArrayXd& rho, double mu, const KernelTable& kernel,
                       const Grid1D& grid) {
  if ((rho < -1e-12).any()) {
    throw NumericalError("self_potential: density has significant negative entries");
  }
  ArrayXd src = rho.max(0.0) * mu;
  ArrayXcd conv = ifft(fft(src.cast<Complex>()) * kernel.spectrum);
  return conv.real() * grid.dx;
}

MatrixXd pair_potential_grid(const Grid1D& grid, const Masses& masses,
                             double gamma, const KernelTable& kernel) {
  const int N = grid.N;
  const double pref = -gamma * masses.mu1 * masses.mu2;
  MatrixXd v(N, N);
  // V depends only on the wrapped index difference; reuse the kernel table.
  for (int i1 = 0; i1 < N; ++i1) {
    for (int i2 = 0; i2 < N; ++i2) {
      int d = i1 - i2;
      if (d < 0) d += N;
      v(i1, i2) = pref * kernel.samples(d);
    }
  }
  return v;
}

ResidualInteraction residual_interaction(const MatrixXd& v, const ArrayXd& rho1,
                                         const ArrayXd& rho2, const Grid1D& grid) {
  const double dx = grid.dx;
  ResidualInteraction out;
  out.partial_over_2 = (v * (rho2.matrix() * dx)).array();          // <V>_2(x1)
  out.partial_over_1 = (v.transpose() * (rho1.matrix() * dx)).array();  // <V>_1(x2)
  out.mean12 = (rho1 * out.partial_over_2).sum() * dx;
  out.v_res = v;
  out.v_res.colwise() -= out.partial_over_2.matrix();
  out.v_res.rowwise() -= out.partial_over_1.matrix().transpose();
  out.v_res.array() += out.mean12;
  return out;
}

}  // namespace sn2b
