#include "sn2b/hartree.hpp"

#include <cmath>

#include "sn2b/fft.hpp"

namespace sn2b {

HartreePlan make_hartree_plan(const Grid1D& grid, const Masses& masses,
                              const Couplings& couplings, const KernelTable& kernel,
                              double dt) {
  if (!(dt > 0.0)) throw ConfigError("make_hartree_plan: dt must be positive");
  HartreePlan plan;
  plan.dt = dt;
  plan.couplings = couplings;
  plan.kernel = kernel;
  plan.kinetic_phase1 =
      (Complex(0.0, -dt) * (grid.k.square() / (2.0 * masses.mu1)).cast<Complex>()).exp();
  plan.kinetic_phase2 =
      (Complex(0.0, -dt) * (grid.k.square() / (2.0 * masses.mu2)).cast<Complex>()).exp();
  return plan;
}

namespace {

// Effective potentials from a synchronous density snapshot:
// V_i = -kappa*mu_i*Phi_i[rho_i] - gamma*mu1*mu2*conv(U, rho_j).
std::pair<ArrayXd, ArrayXd> effective_potentials(const ArrayXd& rho1,
                                                 const ArrayXd& rho2,
                                                 const HartreePair& pair,
                                                 const HartreePlan& plan) {
  const double kappa = plan.couplings.kappa;
  const double gamma = plan.couplings.gamma;
  const double mu1 = pair.masses.mu1;
  const double mu2 = pair.masses.mu2;
  ArrayXd phi1 = self_potential(rho1, mu1, plan.kernel, pair.grid);
  ArrayXd phi2 = self_potential(rho2, mu2, plan.kernel, pair.grid);
  ArrayXd cross1 = self_potential(rho2, 1.0, plan.kernel, pair.grid);
  ArrayXd cross2 = self_potential(rho1, 1.0, plan.kernel, pair.grid);
  ArrayXd v1 = -kappa * mu1 * phi1 - gamma * mu1 * mu2 * cross1;
  ArrayXd v2 = -kappa * mu2 * phi2 - gamma * mu1 * mu2 * cross2;
  return {v1, v2};
}

void half_potential(HartreePair& pair, const HartreePlan& plan) {
  auto [v1, v2] = effective_potentials(pair.psi1.abs2(), pair.psi2.abs2(), pair, plan);
  const Complex ih(0.0, -plan.dt / 2.0);
  pair.psi1 *= (ih * v1.cast<Complex>()).exp();
  pair.psi2 *= (ih * v2.cast<Complex>()).exp();
}

}  // namespace

void hartree_step(HartreePair& pair, const HartreePlan& plan) {
  half_potential(pair, plan);
  pair.psi1 = ifft(fft(pair.psi1) * plan.kinetic_phase1);
  pair.psi2 = ifft(fft(pair.psi2) * plan.kinetic_phase2);
  half_potential(pair, plan);
  pair.t += plan.dt;

  const double dx = pair.grid.dx;
  const double n1 = std::sqrt(pair.psi1.abs2().sum() * dx);
  const double n2 = std::sqrt(pair.psi2.abs2().sum() * dx);
  if (std::abs(n1 - 1.0) > 1e-6 || std::abs(n2 - 1.0) > 1e-6) {
    throw NumericalError("hartree_step: factor norm blowup at t=" +
                         std::to_string(pair.t));
  }
  pair.psi1 /= n1;
  pair.psi2 /= n2;
}

EnergyBreakdown hartree_energy(const HartreePair& pair, const HartreePlan& plan) {
  const Grid1D& grid = pair.grid;
  const double dx = grid.dx;
  const double kappa = plan.couplings.kappa;
  const double gamma = plan.couplings.gamma;
  const double mu1 = pair.masses.mu1;
  const double mu2 = pair.masses.mu2;

  auto kinetic = [&](const ArrayXcd& psi, double mu) {
    ArrayXcd spec = fft(psi);
    return (spec.abs2() * grid.k.square() / (2.0 * mu)).sum() * dx / grid.N;
  };

  ArrayXd rho1 = pair.psi1.abs2();
  ArrayXd rho2 = pair.psi2.abs2();
  ArrayXd phi1 = self_potential(rho1, mu1, plan.kernel, grid);
  ArrayXd phi2 = self_potential(rho2, mu2, plan.kernel, grid);
  ArrayXd cross = self_potential(rho2, 1.0, plan.kernel, grid);

  EnergyBreakdown e;
  e.kinetic = kinetic(pair.psi1, mu1) + kinetic(pair.psi2, mu2);
  e.pair = -gamma * mu1 * mu2 * (rho1 * cross).sum() * dx;
  e.self1 = -(kappa / 2.0) * mu1 * (rho1 * phi1).sum() * dx;
  e.self2 = -(kappa / 2.0) * mu2 * (rho2 * phi2).sum() * dx;
  e.norm = std::sqrt(rho1.sum() * dx) * std::sqrt(rho2.sum() * dx);
  return e;
}

std::vector<HartreeComparisonRow> hartree_vs_full(
    const SingleProfile& phi1, const SingleProfile& phi2, const Grid1D& grid,
    const Masses& masses, const Couplings& couplings, const KernelTable& kernel,
    double dt, double t_final, int sample_every) {
  HartreePair pair;
  pair.psi1 = phi1.amplitude;
  pair.psi2 = phi2.amplitude;
  pair.grid = grid;
  pair.masses = masses;
  HartreePlan hplan = make_hartree_plan(grid, masses, couplings, kernel, dt);

  AssembledState assembled = assemble_state(StateKind::I, phi1, phi2, grid, masses);
  TwoBodyState full = assembled.state;
  StepPlan fplan = make_step_plan(grid, masses, couplings, kernel, dt);

  const int n_steps = static_cast<int>(std::llround(t_final / dt));
  std::vector<HartreeComparisonRow> rows;
  auto sample = [&]() {
    HartreeComparisonRow row;
    row.t = full.t;
    auto [svn, sl] = entropies(schmidt(full));
    (void)sl;
    row.s_vn_full = svn;
    auto [rho1f, rho2f] = marginals(full);
    ArrayXd d1 = rho1f - pair.psi1.abs2();
    ArrayXd d2 = rho2f - pair.psi2.abs2();
    row.l2_marginal_dist =
        std::sqrt((d1.square().sum() + d2.square().sum()) * grid.dx);
    row.e_full = energy(full, fplan).total();
    row.e_hartree = hartree_energy(pair, hplan).total();
    rows.push_back(row);
  };

  sample();
  for (int n = 1; n <= n_steps; ++n) {
    step(full, fplan);
    hartree_step(pair, hplan);
    if (n % sample_every == 0 || n == n_steps) sample();
  }
  return rows;
}

}  // namespace sn2b
