#include <cmath>

#include <doctest.h>

#include "sn2b/grid.hpp"
#include "sn2b/potentials.hpp"

using namespace sn2b;

namespace {
Grid1D baseline_grid() { return make_grid(256, 40.0); }

ArrayXd gaussian_density(const Grid1D& g, double sigma, double center) {
  ArrayXd rho = (-(g.x - center).square() / (2.0 * sigma * sigma)).exp();
  rho /= rho.sum() * g.dx;
  return rho;
}
}  // namespace

TEST_CASE("kernel evaluation") {
  CHECK(kernel_eval(0.0, 0.2, 40.0) == doctest::Approx(5.0));
  CHECK(kernel_eval(1.0, 0.2, 40.0) == doctest::Approx(1.0 / std::sqrt(1.04)));
  CHECK(kernel_eval(39.0, 0.2, 40.0) == doctest::Approx(1.0 / std::sqrt(1.04)));
  CHECK_THROWS_AS(kernel_eval(1.0, 0.0, 40.0), ConfigError);
  CHECK_THROWS_AS(kernel_eval(1.0, -0.2, 40.0), ConfigError);
}

TEST_CASE("kernel table is positive, peaked at zero offset, and even") {
  Grid1D g = baseline_grid();
  KernelTable table = make_kernel(g, 0.2);
  CHECK((table.samples > 0.0).all());
  CHECK(table.samples.maxCoeff() == doctest::Approx(5.0));
  CHECK(table.samples(0) == doctest::Approx(5.0));
  for (int j = 1; j < g.N; ++j) {
    CHECK(table.samples(j) == doctest::Approx(table.samples(g.N - j)).epsilon(1e-14));
  }
}

TEST_CASE("self potential of a point source reproduces the kernel") {
  Grid1D g = baseline_grid();
  KernelTable table = make_kernel(g, 0.2);
  ArrayXd rho = ArrayXd::Zero(g.N);
  const int j0 = g.N / 2;  // x = 0
  rho(j0) = 1.0 / g.dx;
  ArrayXd phi = self_potential(rho, 1.0, table, g);
  for (int j = 0; j < g.N; ++j) {
    CHECK(phi(j) ==
          doctest::Approx(kernel_eval(g.x(j), 0.2, g.L)).epsilon(1e-12));
  }
}

TEST_CASE("self potential of a uniform density is flat") {
  Grid1D g = baseline_grid();
  KernelTable table = make_kernel(g, 0.2);
  ArrayXd rho = ArrayXd::Constant(g.N, 1.0 / g.L);
  ArrayXd phi = self_potential(rho, 1.0, table, g);
  const double expected = table.samples.sum() * g.dx / g.L;
  CHECK((phi - expected).abs().maxCoeff() < 1e-12 * expected);
}

TEST_CASE("FFT convolution agrees with the direct quadrature sum") {
  Grid1D g = baseline_grid();
  KernelTable table = make_kernel(g, 0.2);
  ArrayXd rho = gaussian_density(g, 1.0, 0.0);
  ArrayXd phi = self_potential(rho, 1.0, table, g);
  for (int i = 0; i < g.N; i += 17) {
    double direct = 0.0;
    for (int j = 0; j < g.N; ++j) {
      direct += kernel_eval(g.x(i) - g.x(j), 0.2, g.L) * rho(j) * g.dx;
    }
    CHECK(std::abs(phi(i) - direct) < 1e-10);
  }
}

TEST_CASE("self potential is linear and parity preserving") {
  Grid1D g = baseline_grid();
  KernelTable table = make_kernel(g, 0.2);
  ArrayXd a = gaussian_density(g, 1.0, -3.0);
  ArrayXd b = gaussian_density(g, 2.0, 5.0);
  ArrayXd combo = self_potential(0.7 * a + 1.3 * b, 1.0, table, g);
  ArrayXd split = 0.7 * self_potential(a, 1.0, table, g) +
                  1.3 * self_potential(b, 1.0, table, g);
  CHECK((combo - split).abs().maxCoeff() < 1e-12 * combo.abs().maxCoeff());

  ArrayXd even = gaussian_density(g, 1.5, 0.0);
  ArrayXd phi = self_potential(even, 1.0, table, g);
  for (int j = 1; j < g.N; ++j) {
    CHECK(phi(j) == doctest::Approx(phi(g.N - j)).epsilon(1e-12));
  }
}

TEST_CASE("self potential rejects corrupted densities") {
  Grid1D g = baseline_grid();
  KernelTable table = make_kernel(g, 0.2);
  ArrayXd rho = gaussian_density(g, 1.0, 0.0);
  rho(10) = -1e-6;
  CHECK_THROWS_AS(self_potential(rho, 1.0, table, g), NumericalError);
  // tiny negatives are clamped, not fatal
  rho(10) = -1e-14;
  CHECK_NOTHROW(self_potential(rho, 1.0, table, g));
}

TEST_CASE("pair potential grid") {
  Grid1D g = baseline_grid();
  KernelTable table = make_kernel(g, 0.2);

  MatrixXd v = pair_potential_grid(g, {1.0, 1.0}, 1.0, table);
  CHECK((v.array() <= 0.0).all());
  for (int i = 0; i < g.N; i += 31) CHECK(v(i, i) == doctest::Approx(-5.0));

  MatrixXd zero = pair_potential_grid(g, {1.0, 1.0}, 0.0, table);
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);

  MatrixXd asym = pair_potential_grid(g, {4.0, 1.0}, 1.0, table);
  const int sep = static_cast<int>(std::lround(1.0 / g.dx));  // offset by ~1
  const double expected = -4.0 * kernel_eval(sep * g.dx, 0.2, g.L);
  CHECK(asym(sep + 10, 10) == doctest::Approx(expected).epsilon(1e-12));
  // depends only on the wrapped difference
  CHECK(asym(sep + 50, 50) == doctest::Approx(asym(sep + 10, 10)).epsilon(1e-14));
}

TEST_CASE("residual interaction vanishes for additive and constant fields") {
  Grid1D g = baseline_grid();
  ArrayXd rho1 = gaussian_density(g, 1.0, -3.0);
  ArrayXd rho2 = gaussian_density(g, 1.0, 3.0);

  ArrayXd a = (0.3 * g.x).sin();
  ArrayXd b = (0.1 * g.x).cos() * 2.0;
  MatrixXd additive(g.N, g.N);
  for (int i = 0; i < g.N; ++i) {
    for (int j = 0; j < g.N; ++j) additive(i, j) = a(i) + b(j);
  }
  ResidualInteraction res = residual_interaction(additive, rho1, rho2, g);
  CHECK(res.v_res.cwiseAbs().maxCoeff() < 1e-10);

  MatrixXd constant = MatrixXd::Constant(g.N, g.N, 3.7);
  ResidualInteraction res_const = residual_interaction(constant, rho1, rho2, g);
  CHECK(res_const.v_res.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("residual interaction matches the direct quadrature oracle") {
  Grid1D g = baseline_grid();
  KernelTable table = make_kernel(g, 0.2);
  ArrayXd rho1 = gaussian_density(g, 1.0, -3.0);
  ArrayXd rho2 = gaussian_density(g, 1.0, 3.0);
  MatrixXd v = pair_potential_grid(g, {1.0, 1.0}, 1.0, table);
  ResidualInteraction res = residual_interaction(v, rho1, rho2, g);

  // direct O(N^2) quadrature for the partial expectations and the mean
  double mean = 0.0;
  for (int i = 0; i < g.N; ++i) {
    double partial = 0.0;
    for (int j = 0; j < g.N; ++j) partial += rho2(j) * v(i, j) * g.dx;
    CHECK(std::abs(res.partial_over_2(i) - partial) <
          1e-10 * std::abs(partial) + 1e-14);
    mean += rho1(i) * partial * g.dx;
  }
  CHECK(res.mean12 == doctest::Approx(mean).epsilon(1e-10));

  // <V_res>_12 = 0 and both marginal expectations vanish
  double res_mean = 0.0;
  for (int i = 0; i < g.N; ++i) {
    for (int j = 0; j < g.N; ++j) {
      res_mean += rho1(i) * rho2(j) * res.v_res(i, j) * g.dx * g.dx;
    }
  }
  CHECK(std::abs(res_mean) < 1e-10);
  ArrayXd marg1 = (res.v_res * (rho2.matrix() * g.dx)).array();
  ArrayXd marg2 = (res.v_res.transpose() * (rho1.matrix() * g.dx)).array();
  CHECK(marg1.abs().maxCoeff() < 1e-10);
  CHECK(marg2.abs().maxCoeff() < 1e-10);

  // <V_res^2>_12 > 0 for this genuinely nonadditive field
  double res_sq = 0.0;
  for (int i = 0; i < g.N; ++i) {
    for (int j = 0; j < g.N; ++j) {
      res_sq += rho1(i) * rho2(j) * res.v_res(i, j) * res.v_res(i, j) * g.dx * g.dx;
    }
  }
  CHECK(res_sq > 0.0);
}
