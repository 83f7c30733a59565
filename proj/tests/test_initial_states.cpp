#include <cmath>

#include <doctest.h>

#include "sn2b/diagnostics.hpp"
#include "sn2b/fft.hpp"
#include "sn2b/initial_states.hpp"

using namespace sn2b;

namespace {
struct Fixture {
  Grid1D grid = make_grid(256, 40.0);
  KernelTable kernel = make_kernel(grid, 0.2);
};

double kinetic_expectation(const ArrayXcd& phi, const Grid1D& g, double mu) {
  ArrayXcd spec = fft(phi);
  return (spec.abs2() * g.k.square() / (2.0 * mu)).sum() * g.dx / g.N;
}

double density_variance(const ArrayXcd& phi, const Grid1D& g) {
  ArrayXd rho = phi.abs2();
  const double mean = (g.x * rho).sum() * g.dx;
  return ((g.x - mean).square() * rho).sum() * g.dx;
}
}  // namespace

TEST_CASE("gaussian profile moments and symmetry") {
  Fixture f;
  SingleProfile p = gaussian_profile(f.grid, 1.0, -3.0);
  CHECK(p.amplitude.abs2().sum() * f.grid.dx == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::Index peak;
  p.amplitude.abs2().maxCoeff(&peak);
  CHECK(std::abs(f.grid.x(peak) + 3.0) <= f.grid.dx);  // nearest grid point
  CHECK(density_variance(p.amplitude, f.grid) == doctest::Approx(1.0).epsilon(1e-6));

  SingleProfile centered = gaussian_profile(f.grid, 1.0, 0.0);
  for (int j = 1; j < f.grid.N; ++j) {
    CHECK(centered.amplitude(j).real() ==
          doctest::Approx(centered.amplitude(f.grid.N - j).real()).epsilon(1e-14));
  }

  CHECK(kinetic_expectation(centered.amplitude, f.grid, 1.0) ==
        doctest::Approx(0.125).epsilon(1e-8));
}

TEST_CASE("gaussian profile rejects unresolvable widths") {
  Fixture f;
  CHECK_THROWS_AS(gaussian_profile(f.grid, 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(gaussian_profile(f.grid, -1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(gaussian_profile(f.grid, 0.2, 0.0), ConfigError);  // < 2*dx
  CHECK_THROWS_AS(gaussian_profile(f.grid, 1.0, 25.0), ConfigError);
}

TEST_CASE("ground state requires self-binding") {
  Fixture f;
  CHECK_THROWS_AS(ground_state_sn(f.grid, 1.0, 0.0, f.kernel), NumericalError);
}

TEST_CASE("ground state converges, binds, and is a fixed point") {
  Fixture f;
  GroundStateResult gs = ground_state_sn(f.grid, 1.0, 1.0, f.kernel);
  CHECK(gs.residual < 1e-8);
  CHECK(gs.omega < 0.0);
  CHECK(gs.profile.amplitude.imag().abs().maxCoeff() < 1e-10);
  CHECK((gs.profile.amplitude.real() > -1e-12).all());

  // re-seeding with the converged profile leaves it unchanged
  GroundStateOptions opts;
  opts.seed = gs.profile.amplitude;
  GroundStateResult again = ground_state_sn(f.grid, 1.0, 1.0, f.kernel, opts);
  CHECK(again.omega == doctest::Approx(gs.omega).epsilon(1e-9));
  CHECK((again.profile.amplitude - gs.profile.amplitude).abs().maxCoeff() < 1e-8);
}

TEST_CASE("product configurations are rank one") {
  Fixture f;
  SingleProfile l = gaussian_profile(f.grid, 1.0, -3.0);
  SingleProfile r = gaussian_profile(f.grid, 1.0, 3.0);
  for (StateKind kind : {StateKind::I, StateKind::II}) {
    AssembledState a = assemble_state(kind, l, r, f.grid, {1.0, 1.0});
    CHECK(a.state.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    SchmidtSpectrum spec = schmidt(a.state);
    CHECK(spec.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(spec.eigenvalues(1) < 1e-20);
  }
}

TEST_CASE("superposition configurations match the closed-form Schmidt pair") {
  Fixture f;
  SingleProfile l = gaussian_profile(f.grid, 1.0, -3.0);
  SingleProfile r = gaussian_profile(f.grid, 1.0, 3.0);

  for (StateKind kind : {StateKind::III, StateKind::IV}) {
    AssembledState a = assemble_state(kind, l, r, f.grid, {1.0, 1.0});
    const double s = a.overlap;
    CHECK(s == doctest::Approx(std::exp(-36.0 / 8.0)).epsilon(1e-6));

    const double lam_plus = (1 + s) * (1 + s) / (2 * (1 + s * s));
    const double lam_minus = (1 - s) * (1 - s) / (2 * (1 + s * s));
    SchmidtSpectrum spec = schmidt(a.state);
    CHECK(spec.eigenvalues(0) == doctest::Approx(lam_plus).epsilon(1e-8));
    CHECK(spec.eigenvalues(1) == doctest::Approx(lam_minus).epsilon(1e-8));

    auto [s_vn, s_lin] = entropies(spec);
    (void)s_lin;
    CHECK(s_vn == doctest::Approx(0.6929).epsilon(1e-3));

    // exchange symmetry for equal masses
    CHECK((a.state.psi - a.state.psi.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("negligible-overlap superpositions start at ln 2") {
  Grid1D grid = make_grid(256, 80.0);
  SingleProfile l = gaussian_profile(grid, 1.0, -15.0);
  SingleProfile r = gaussian_profile(grid, 1.0, 15.0);
  AssembledState a = assemble_state(StateKind::III, l, r, grid, {1.0, 1.0});
  SchmidtSpectrum spec = schmidt(a.state);
  CHECK(spec.eigenvalues(0) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(spec.eigenvalues(1) == doctest::Approx(0.5).epsilon(1e-8));
  auto [s_vn, s_lin] = entropies(spec);
  (void)s_lin;
  CHECK(s_vn == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("rigid translation preserves shape and norm") {
  Fixture f;
  GroundStateResult gs = ground_state_sn(f.grid, 1.0, 1.0, f.kernel);
  SingleProfile shifted = translate_profile(gs.profile, f.grid, -3.0);
  CHECK(shifted.amplitude.abs2().sum() * f.grid.dx ==
        doctest::Approx(1.0).epsilon(1e-12));
  Eigen::Index peak;
  shifted.amplitude.abs2().maxCoeff(&peak);
  CHECK(std::abs(f.grid.x(peak) + 3.0) < f.grid.dx);
  // shifting back recovers the original profile
  SingleProfile back = translate_profile(shifted, f.grid, 3.0);
  CHECK((back.amplitude - gs.profile.amplitude).abs().maxCoeff() < 1e-10);
}
