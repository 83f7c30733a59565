#include "sn2b/propagator.hpp"

#include <cmath>

#include "sn2b/diagnostics.hpp"
#include "sn2b/fft.hpp"

namespace sn2b {

StepPlan make_step_plan(const Grid1D& grid, const Masses& masses,
                        const Couplings& couplings, const KernelTable& kernel,
                        double dt) {
  if (dt == 0.0 || !std::isfinite(dt)) {
    throw ConfigError("make_step_plan: dt must be finite and nonzero");
  }
  StepPlan plan;
  plan.dt = dt;
  plan.couplings = couplings;
  plan.kernel = kernel;
  plan.pair_field = pair_potential_grid(grid, masses, couplings.gamma, kernel);

  const int N = grid.N;
  plan.kinetic_phase.resize(N, N);
  for (int i1 = 0; i1 < N; ++i1) {
    const double t1 = grid.k(i1) * grid.k(i1) / (2.0 * masses.mu1);
    for (int i2 = 0; i2 < N; ++i2) {
      const double t2 = grid.k(i2) * grid.k(i2) / (2.0 * masses.mu2);
      plan.kinetic_phase(i1, i2) = std::exp(Complex(0.0, -dt * (t1 + t2)));
    }
  }
  plan.pair_phase_half =
      (Complex(0.0, -dt / 2.0) * plan.pair_field.array().cast<Complex>())
          .exp()
          .matrix();
  return plan;
}

namespace {

// Half potential substep exp(-i*(dt/2)*V_total) applied in place;
// V_total = -kappa*mu1*Phi1(x1) - kappa*mu2*Phi2(x2) + V_pair(x1,x2),
// with Phi_i recomputed from the current marginals.
void apply_half_potential(TwoBodyState& state, const StepPlan& plan) {
  const double h = plan.dt / 2.0;
  auto [rho1, rho2] = marginals(state);
  const double kappa = plan.couplings.kappa;
  const double mu1 = state.masses.mu1;
  const double mu2 = state.masses.mu2;
  ArrayXd phi1 = self_potential(rho1, mu1, plan.kernel, state.grid);
  ArrayXd phi2 = self_potential(rho2, mu2, plan.kernel, state.grid);

  ArrayXcd phase1 = (Complex(0.0, h * kappa * mu1) * phi1.cast<Complex>()).exp();
  ArrayXcd phase2 = (Complex(0.0, h * kappa * mu2) * phi2.cast<Complex>()).exp();

  state.psi = state.psi.cwiseProduct(plan.pair_phase_half);
  state.psi.array().colwise() *= phase1;
  state.psi.array().rowwise() *= phase2.transpose();
}

}  // namespace

void step(TwoBodyState& state, const StepPlan& plan) {
  apply_half_potential(state, plan);
  fft2_inplace(state.psi);
  state.psi = state.psi.cwiseProduct(plan.kinetic_phase);
  ifft2_inplace(state.psi);
  apply_half_potential(state, plan);
  state.t += plan.dt;

  const double norm = std::sqrt(state.norm_squared());
  if (std::abs(norm - 1.0) > 1e-6) {
    throw NumericalError("step: norm drifted to " + std::to_string(norm) +
                         " at t=" + std::to_string(state.t) + "; reduce dt");
  }
}

EnergyBreakdown energy(const TwoBodyState& state, const StepPlan& plan) {
  const Grid1D& grid = state.grid;
  const int N = grid.N;
  const double dx2 = grid.dx * grid.dx;

  EnergyBreakdown e;
  e.norm = std::sqrt(state.norm_squared());

  MatrixXcd spec = state.psi;
  fft2_inplace(spec);
  const double spectral_weight = dx2 / (static_cast<double>(N) * N);
  for (int i1 = 0; i1 < N; ++i1) {
    const double t1 = grid.k(i1) * grid.k(i1) / (2.0 * state.masses.mu1);
    for (int i2 = 0; i2 < N; ++i2) {
      const double t2 = grid.k(i2) * grid.k(i2) / (2.0 * state.masses.mu2);
      e.kinetic += (t1 + t2) * std::norm(spec(i1, i2)) * spectral_weight;
    }
  }

  auto [rho1, rho2] = marginals(state);
  e.pair = (state.psi.cwiseAbs2().cwiseProduct(plan.pair_field)).sum() * dx2;

  const double kappa = plan.couplings.kappa;
  ArrayXd phi1 = self_potential(rho1, state.masses.mu1, plan.kernel, grid);
  ArrayXd phi2 = self_potential(rho2, state.masses.mu2, plan.kernel, grid);
  e.self1 = -(kappa / 2.0) * state.masses.mu1 * (rho1 * phi1).sum() * grid.dx;
  e.self2 = -(kappa / 2.0) * state.masses.mu2 * (rho2 * phi2).sum() * grid.dx;
  return e;
}

void evolve(TwoBodyState& state, const StepPlan& plan, double t_final,
            int sample_every, const std::function<void(const TwoBodyState&)>& sink) {
  if (!(t_final > 0.0)) throw ConfigError("evolve: t_final must be positive");
  if (sample_every < 1) throw ConfigError("evolve: sample_every must be >= 1");

  const int n_steps = static_cast<int>(std::llround(t_final / plan.dt));
  if (sink) sink(state);
  for (int n = 1; n <= n_steps; ++n) {
    step(state, plan);
    if (sink && (n % sample_every == 0 || n == n_steps)) sink(state);
  }
}

}  // namespace sn2b
