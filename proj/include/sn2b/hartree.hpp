#pragma once

#include <vector>

#include "sn2b/diagnostics.hpp"
#include "sn2b/initial_states.hpp"
#include "sn2b/propagator.hpp"

namespace sn2b {

/// Mean-field product state psi1(x1)*psi2(x2); each factor normalized, gauge
/// constants fixed to zero by per-step renormalization.
struct HartreePair {
  ArrayXcd psi1;
  ArrayXcd psi2;
  Grid1D grid;
  Masses masses;
  double t = 0.0;
};

struct HartreePlan {
  double dt = 0.01;
  ArrayXcd kinetic_phase1;
  ArrayXcd kinetic_phase2;
  Couplings couplings;
  KernelTable kernel;
};

HartreePlan make_hartree_plan(const Grid1D& grid, const Masses& masses,
                              const Couplings& couplings, const KernelTable& kernel,
                              double dt);

/// One synchronous Strang step of the coupled mean-field equations; both
/// factors see the same time-level densities in each potential substep.
void hartree_step(HartreePair& pair, const HartreePlan& plan);

EnergyBreakdown hartree_energy(const HartreePair& pair, const HartreePlan& plan);

struct HartreeComparisonRow {
  double t = 0.0;
  double s_vn_full = 0.0;
  double l2_marginal_dist = 0.0;
  double e_full = 0.0;
  double e_hartree = 0.0;
};

/// Runs the full two-body solver and the Hartree solver from the same product
/// factors and samples the divergence between them.
std::vector<HartreeComparisonRow> hartree_vs_full(
    const SingleProfile& phi1, const SingleProfile& phi2, const Grid1D& grid,
    const Masses& masses, const Couplings& couplings, const KernelTable& kernel,
    double dt, double t_final, int sample_every);

}  // namespace sn2b
