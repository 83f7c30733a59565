#include <cmath>

#include <doctest.h>

#include "sn2b/diagnostics.hpp"

using namespace sn2b;

namespace {

struct Setup {
  Grid1D grid = make_grid(256, 40.0);
  KernelTable kernel = make_kernel(grid, 0.2);
};

TwoBodyState product_state(const Grid1D& grid, double sigma, double c1,
                           double c2) {
  SingleProfile a = gaussian_profile(grid, sigma, c1);
  SingleProfile b = gaussian_profile(grid, sigma, c2);
  return assemble_state(StateKind::I, a, b, grid, {1.0, 1.0}).state;
}

}  // namespace

TEST_CASE("marginals of a product state factorize") {
  Setup s;
  TwoBodyState state = product_state(s.grid, 1.0, -3.0, 3.0);
  auto [rho1, rho2] = marginals(state);
  CHECK(rho1.sum() * s.grid.dx == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho2.sum() * s.grid.dx == doctest::Approx(1.0).epsilon(1e-12));

  SingleProfile a = gaussian_profile(s.grid, 1.0, -3.0);
  SingleProfile b = gaussian_profile(s.grid, 1.0, 3.0);
  CHECK((rho1 - a.amplitude.abs2()).abs().maxCoeff() < 1e-12);
  CHECK((rho2 - b.amplitude.abs2()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("entropies of reference spectra") {
  SchmidtSpectrum pure;
  pure.eigenvalues = ArrayXd::Ones(1);
  auto [vn0, lin0] = entropies(pure);
  CHECK(vn0 == 0.0);
  CHECK(lin0 == doctest::Approx(0.0).epsilon(1e-15));

  SchmidtSpectrum bell;
  bell.eigenvalues = ArrayXd::Constant(2, 0.5);
  auto [vn1, lin1] = entropies(bell);
  CHECK(vn1 == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(lin1 == doctest::Approx(0.5).epsilon(1e-14));

  SchmidtSpectrum skew;
  skew.eigenvalues = ArrayXd(2);
  skew.eigenvalues << 0.5111, 0.4889;
  auto [vn2, lin2] = entropies(skew);
  CHECK(vn2 == doctest::Approx(0.69290).epsilon(1e-4));
  (void)lin2;
}

TEST_CASE("short-time coefficient forms agree and detect additivity") {
  Setup s;
  TwoBodyState state = product_state(s.grid, 1.0, -3.0, 3.0);

  MatrixXd v = pair_potential_grid(s.grid, {1.0, 1.0}, 1.0, s.kernel);
  ShortTimeCoefficient c = short_time_coefficient(state, v);
  CHECK(c.residual_form > 0.0);
  CHECK(std::abs(c.residual_form - c.variance_form) < 1e-10);

  // additive field carries no residual interaction
  MatrixXd additive(s.grid.N, s.grid.N);
  for (int i = 0; i < s.grid.N; ++i) {
    for (int j = 0; j < s.grid.N; ++j) {
      additive(i, j) = std::sin(0.2 * s.grid.x(i)) + 0.5 * s.grid.x(j);
    }
  }
  ShortTimeCoefficient c0 = short_time_coefficient(state, additive);
  CHECK(std::abs(c0.residual_form) < 1e-10);
  CHECK(std::abs(c0.variance_form) < 1e-10);

  MatrixXd zero = pair_potential_grid(s.grid, {1.0, 1.0}, 0.0, s.kernel);
  ShortTimeCoefficient cz = short_time_coefficient(state, zero);
  CHECK(cz.residual_form == 0.0);
}

TEST_CASE("short-time coefficient demands a product state") {
  Setup s;
  SingleProfile l = gaussian_profile(s.grid, 1.0, -3.0);
  SingleProfile r = gaussian_profile(s.grid, 1.0, 3.0);
  TwoBodyState entangled =
      assemble_state(StateKind::III, l, r, s.grid, {1.0, 1.0}).state;
  MatrixXd v = pair_potential_grid(s.grid, {1.0, 1.0}, 1.0, s.kernel);
  CHECK_THROWS_AS(short_time_coefficient(entangled, v), NumericalError);
}

TEST_CASE("reduced Wigner function reproduces both marginals") {
  Setup s;
  TwoBodyState state = product_state(s.grid, 1.0, -3.0, 3.0);
  auto [rho1, rho2] = marginals(state);

  for (int which : {1, 2}) {
    WignerFunction w = wigner_reduced(state, which);
    CHECK(w.x.size() == s.grid.N);
    CHECK(w.p.size() == s.grid.N);
    // p-grid spacing pi/L, monotonic
    CHECK(w.p(1) - w.p(0) == doctest::Approx(pi / s.grid.L).epsilon(1e-12));
    CHECK((w.p.tail(w.p.size() - 1) > w.p.head(w.p.size() - 1)).all());

    // integrating over p gives the position marginal
    const double dp = w.p(1) - w.p(0);
    ArrayXd x_marg = w.w.rowwise().sum().array() * dp;
    const ArrayXd& rho = (which == 1) ? rho1 : rho2;
    CHECK((x_marg - rho).abs().maxCoeff() < 1e-8);

    // total mass one
    CHECK(w.w.sum() * w.dxdp == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("Gaussian reduced Wigner function is nonnegative, cat state is not") {
  Setup s;
  TwoBodyState gauss = product_state(s.grid, 1.0, 0.0, 0.0);
  WignerFunction wg = wigner_reduced(gauss, 1);
  CHECK(wigner_negativity(wg) < 1e-8);

  // particle 1 in (phi_L + phi_R): interference fringes go negative
  SingleProfile l = gaussian_profile(s.grid, 1.0, -3.0);
  SingleProfile r = gaussian_profile(s.grid, 1.0, 3.0);
  TwoBodyState cat =
      assemble_state(StateKind::II, l, r, s.grid, {1.0, 1.0}).state;
  WignerFunction wc = wigner_reduced(cat, 1);
  CHECK(wigner_negativity(wc) > 0.1);
}

TEST_CASE("relative-coordinate Wigner function localizes at the separation") {
  Setup s;
  TwoBodyState state = product_state(s.grid, 1.0, -3.0, 3.0);
  WignerFunction w = wigner_relative(state);
  CHECK(w.w.sum() * w.dxdp == doctest::Approx(1.0).epsilon(1e-4));

  // relative density peaks at r = x1 - x2 = -6
  const double dp = w.p(1) - w.p(0);
  ArrayXd r_marg = w.w.rowwise().sum().array() * dp;
  Eigen::Index peak;
  r_marg.maxCoeff(&peak);
  CHECK(std::abs(w.x(peak) + 6.0) < 2.0 * s.grid.dx);

  // product of displaced Gaussians: no relative-coordinate negativity
  CHECK(wigner_negativity(w) < 1e-3);
}

TEST_CASE("exchange superposition has genuine relative-coordinate negativity") {
  Setup s;
  SingleProfile l = gaussian_profile(s.grid, 1.0, -3.0);
  SingleProfile r = gaussian_profile(s.grid, 1.0, 3.0);
  TwoBodyState state =
      assemble_state(StateKind::IV, l, r, s.grid, {1.0, 1.0}).state;
  WignerFunction w = wigner_relative(state);
  // two lobes at r = +-6 plus interference near r = 0
  CHECK(wigner_negativity(w) > 0.05);
}

TEST_CASE("separations for displaced product Gaussians") {
  Setup s;
  TwoBodyState state = product_state(s.grid, 1.0, -3.0, 3.0);
  auto [dx_mean, d_rel] = separations(state);
  CHECK(dx_mean == doctest::Approx(6.0).epsilon(1e-8));
  // <(x1-x2)^2> = 36 + 2*sigma^2 = 38
  CHECK(d_rel == doctest::Approx(std::sqrt(38.0)).epsilon(1e-6));
}

TEST_CASE("participation ratio of reference densities") {
  Setup s;
  ArrayXd uniform = ArrayXd::Constant(s.grid.N, 1.0 / s.grid.L);
  CHECK(participation_ratio(uniform, s.grid) ==
        doctest::Approx(s.grid.L).epsilon(1e-12));

  SingleProfile g = gaussian_profile(s.grid, 1.0, 0.0);
  CHECK(participation_ratio(g.amplitude.abs2(), s.grid) ==
        doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-8));

  // two disjoint copies double the support measure
  SingleProfile a = gaussian_profile(s.grid, 1.0, -8.0);
  SingleProfile b = gaussian_profile(s.grid, 1.0, 8.0);
  ArrayXd two = 0.5 * (a.amplitude.abs2() + b.amplitude.abs2());
  CHECK(participation_ratio(two, s.grid) ==
        doctest::Approx(4.0 * std::sqrt(pi)).epsilon(1e-6));
}

TEST_CASE("compute_record bundles consistent diagnostics") {
  Setup s;
  SingleProfile l = gaussian_profile(s.grid, 1.0, -3.0);
  SingleProfile r = gaussian_profile(s.grid, 1.0, 3.0);
  TwoBodyState state =
      assemble_state(StateKind::III, l, r, s.grid, {1.0, 1.0}).state;
  StepPlan plan = make_step_plan(s.grid, state.masses, {1.0, 1.0}, s.kernel, 0.01);

  DiagnosticsOptions opts;
  opts.wigner_negativity = true;
  DiagnosticsRecord rec = compute_record(state, plan, opts);
  CHECK(rec.norm == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rec.lambda1 >= rec.lambda2);
  CHECK(rec.lambda2 >= rec.lambda3);
  CHECK(rec.s_vn >= 0.0);
  CHECK(rec.s_lin >= 0.0);
  CHECK(rec.s_lin <= rec.s_vn + 1e-12);  // S_L <= S_vN for any spectrum
  CHECK(rec.neg1.has_value());
  CHECK(rec.neg2.has_value());
  CHECK(rec.neg_rel.has_value());

  DiagnosticsRecord cheap = compute_record(state, plan);
  CHECK_FALSE(cheap.neg1.has_value());
}
