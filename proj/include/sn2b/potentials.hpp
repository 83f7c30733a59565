#pragma once

#include "sn2b/grid.hpp"
#include "sn2b/types.hpp"

namespace sn2b {

/// Softened inverse-distance kernel sampled at all periodic grid offsets,
/// together with its spectrum for circular convolutions.
struct KernelTable {
  double epsilon = 0.0;
  ArrayXd samples;    // U_eps(d_j), d_j = periodic_min_distance(j*dx, L)
  ArrayXcd spectrum;  // DFT of samples
};

/// U_eps(r) = 1/sqrt(r^2 + eps^2) at the periodic minimum distance.
double kernel_eval(double r, double epsilon, double L);

KernelTable make_kernel(const Grid1D& grid, double epsilon);

/// Gravitational potential sourced by one marginal:
/// Phi(x) = sum_j U_eps(x - x_j) * mu * rho(x_j) * dx, via FFT convolution.
/// The single mass factor of the source density is applied here; the
/// propagator multiplies by kappa*mu when forming the Hamiltonian term.
ArrayXd self_potential(const ArrayXd& rho, double mu, const KernelTable& kernel,
                       const Grid1D& grid);

/// Static nonseparable pair field V(x1,x2) = -gamma*mu1*mu2*U_eps(x1 - x2).
MatrixXd pair_potential_grid(const Grid1D& grid, const Masses& masses,
                             double gamma, const KernelTable& kernel);

/// Partial expectations of a 2D field over product marginals and the
/// nonadditive residual V_res = V - <V>_2 - <V>_1 + <V>_12.
struct ResidualInteraction {
  MatrixXd v_res;
  double mean12 = 0.0;
  ArrayXd partial_over_2;  // <V>_2(x1)
  ArrayXd partial_over_1;  // <V>_1(x2)
};

ResidualInteraction residual_interaction(const MatrixXd& v, const ArrayXd& rho1,
                                         const ArrayXd& rho2, const Grid1D& grid);

}  // namespace sn2b
