#pragma once

#include <optional>

#include "sn2b/grid.hpp"
#include "sn2b/potentials.hpp"
#include "sn2b/types.hpp"

namespace sn2b {

enum class ProfileKind { Gaussian, StationarySN };
enum class StateKind { I, II, III, IV };

/// Normalized single-particle profile on the grid.
struct SingleProfile {
  ArrayXcd amplitude;
  ProfileKind kind = ProfileKind::Gaussian;
  double center = 0.0;
  double mass = 1.0;
};

/// Joint two-particle amplitude; psi(i1, i2) lives on grid x grid.
struct TwoBodyState {
  MatrixXcd psi;
  Grid1D grid;
  Masses masses;
  double t = 0.0;

  double norm_squared() const { return psi.squaredNorm() * grid.dx * grid.dx; }
};

SingleProfile gaussian_profile(const Grid1D& grid, double sigma0, double center,
                               double mass = 1.0);

struct GroundStateOptions {
  double seed_sigma = 1.0;
  double dtau = 0.01;
  double tol = 1e-8;
  int max_iters = 100000;
  std::optional<ArrayXcd> seed;  // overrides the Gaussian seed when set
};

struct GroundStateResult {
  SingleProfile profile;
  double omega = 0.0;       // Rayleigh quotient of the converged state
  double residual = 0.0;    // ||H phi - omega phi||_2 at convergence
  int iterations = 0;
};

/// Imaginary-time solve of the single-particle nonlinear eigenproblem.
/// Throws NumericalError when kappa*mu^2 = 0 (no bound state) or when the
/// residual fails to reach tol within the iteration budget.
GroundStateResult ground_state_sn(const Grid1D& grid, double mu, double kappa,
                                  const KernelTable& kernel,
                                  const GroundStateOptions& opts = {});

/// Rigidly translated copy of a profile (spectral shift, exact on the grid).
SingleProfile translate_profile(const SingleProfile& p, const Grid1D& grid,
                                double shift);

struct AssembledState {
  TwoBodyState state;
  double overlap = 0.0;  // s = integral conj(phi_L) phi_R dx, grid quadrature
};

/// Builds one of the four two-body configurations from left/right components
/// centered at -R0/2 and +R0/2, then renormalizes on the grid.
AssembledState assemble_state(StateKind kind, const SingleProfile& phi_left,
                              const SingleProfile& phi_right, const Grid1D& grid,
                              const Masses& masses);

}  // namespace sn2b
