#pragma once

#include "sn2b/types.hpp"

namespace sn2b {

/// Periodic 1D grid shared by both particle axes: cell-centered points
/// x_j = -L/2 + j*dx and the conjugate FFT wavenumber grid.
struct Grid1D {
  int N = 0;
  double L = 0.0;
  double dx = 0.0;
  ArrayXd x;  // x_j = -L/2 + j*dx, j = 0..N-1
  ArrayXd k;  // k_j = 2*pi*m_j/L, FFT ordering m_j in {0..N/2-1, -N/2..-1}
};

Grid1D make_grid(int N, double L);

/// Wraps r into [-L/2, L/2); |result| <= L/2, with |r| = L/2 mapped to -L/2.
double periodic_min_distance(double r, double L);

}  // namespace sn2b
