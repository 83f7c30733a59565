#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sn2b/initial_states.hpp"
#include "sn2b/propagator.hpp"

namespace sn2b {

/// Schmidt eigenvalues lambda_k = s_k^2 of the quadrature-weighted amplitude
/// matrix, descending; sum equals the squared norm of the state.
struct SchmidtSpectrum {
  ArrayXd eigenvalues;
  double threshold = 1e-14;  // entropy floor, 0*ln(0) := 0 below this
};

/// Phase-space quasiprobability on an (x, p) grid with its quadrature weight.
struct WignerFunction {
  MatrixXd w;   // w(i, m) at (x_i, p_m)
  ArrayXd x;    // position (or relative-coordinate) axis
  ArrayXd p;    // momentum axis, spacing pi/L
  double dxdp = 0.0;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double norm = 0.0;
  EnergyBreakdown energy;
  double s_vn = 0.0;
  double s_lin = 0.0;
  double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
  double dx_mean = 0.0;
  double d_rel = 0.0;
  double pr1 = 0.0, pr2 = 0.0;
  std::optional<double> neg1, neg2, neg_rel;  // Wigner negativities, on request
};

std::pair<ArrayXd, ArrayXd> marginals(const TwoBodyState& state);

SchmidtSpectrum schmidt(const TwoBodyState& state, double threshold = 1e-14);

/// (S_vN, S_L) = (-sum lambda ln lambda, 1 - sum lambda^2).
std::pair<double, double> entropies(const SchmidtSpectrum& spectrum);

/// Short-time coefficient c = 2 <V_res^2>_12 of S_L(t) = c t^2 + O(t^3) for a
/// product state; computed through the residual form and cross-checked
/// against the joint/marginal variance combination.
struct ShortTimeCoefficient {
  double residual_form = 0.0;
  double variance_form = 0.0;
};
ShortTimeCoefficient short_time_coefficient(const TwoBodyState& product_state,
                                            const MatrixXd& pair_field);

WignerFunction wigner_reduced(const TwoBodyState& state, int which_particle);

/// Wigner transform of the relative-coordinate density operator, CM traced
/// out with the mass-weighted coordinate map for unequal masses.
WignerFunction wigner_relative(const TwoBodyState& state);

double wigner_negativity(const WignerFunction& w);

/// (dx_mean, d_rel) = (|<x1>-<x2>|, sqrt(<(x1-x2)^2>)), raw coordinates.
std::pair<double, double> separations(const TwoBodyState& state);

double participation_ratio(const ArrayXd& rho, const Grid1D& grid);

struct DiagnosticsOptions {
  bool wigner_negativity = false;
  double schmidt_threshold = 1e-14;
};

DiagnosticsRecord compute_record(const TwoBodyState& state, const StepPlan& plan,
                                 const DiagnosticsOptions& opts = {});

}  // namespace sn2b
