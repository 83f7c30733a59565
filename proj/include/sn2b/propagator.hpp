#pragma once

#include <functional>

#include "sn2b/initial_states.hpp"
#include "sn2b/potentials.hpp"

namespace sn2b {

/// Precomputed per-run data for the Strang split step (dt fixed per run).
struct StepPlan {
  double dt = 0.01;
  MatrixXcd kinetic_phase;    // exp(-i*dt*(k1^2/2mu1 + k2^2/2mu2))
  MatrixXd pair_field;        // V_pair(x1,x2), static
  MatrixXcd pair_phase_half;  // exp(-i*(dt/2)*V_pair)
  Couplings couplings;
  KernelTable kernel;
};

StepPlan make_step_plan(const Grid1D& grid, const Masses& masses,
                        const Couplings& couplings, const KernelTable& kernel,
                        double dt);

struct EnergyBreakdown {
  double kinetic = 0.0;
  double pair = 0.0;
  double self1 = 0.0;
  double self2 = 0.0;
  double norm = 0.0;
  double total() const { return kinetic + pair + self1 + self2; }
};

/// One Strang step, potential-kinetic-potential, with the self-potentials
/// recomputed from the instantaneous marginals at each potential substep.
void step(TwoBodyState& state, const StepPlan& plan);

EnergyBreakdown energy(const TwoBodyState& state, const StepPlan& plan);

/// Advances to t_final, invoking the sink on the initial state and after
/// every sample_every steps (and at the final step).
void evolve(TwoBodyState& state, const StepPlan& plan, double t_final,
            int sample_every, const std::function<void(const TwoBodyState&)>& sink);

}  // namespace sn2b
