#include "sn2b/grid.hpp"

#include <cmath>

namespace sn2b {

Grid1D make_grid(int N, double L) {
  if (N < 8 || N % 2 != 0) {
    throw ConfigError("make_grid: N must be even and >= 8, got " + std::to_string(N));
  }
  if (!(L > 0.0)) {
    throw ConfigError("make_grid: L must be positive");
  }
  Grid1D g;
  g.N = N;
  g.L = L;
  g.dx = L / N;
  g.x = ArrayXd::LinSpaced(N, 0, N - 1) * g.dx - L / 2.0;
  g.k.resize(N);
  const double dk = 2.0 * pi / L;
  for (int j = 0; j < N; ++j) {
    const int m = (j < N / 2) ? j : j - N;
    g.k(j) = dk * m;
  }
  return g;
}

double periodic_min_distance(double r, double L) {
  double w = std::remainder(r, L);  // in [-L/2, L/2]
  if (w >= L / 2.0) w -= L;
  return w;
}

}  // namespace sn2b
