#include "sn2b/initial_states.hpp"

#include <cmath>

#include "sn2b/fft.hpp"

namespace sn2b {

namespace {

void normalize(ArrayXcd& phi, double dx) {
  const double n = std::sqrt(phi.abs2().sum() * dx);
  phi /= n;
}

double density_variance(const ArrayXcd& phi, const Grid1D& grid) {
  ArrayXd rho = phi.abs2();
  const double w = rho.sum() * grid.dx;
  const double mean = (grid.x * rho).sum() * grid.dx / w;
  return ((grid.x - mean).square() * rho).sum() * grid.dx / w;
}

/// H[|phi|^2] phi with the instantaneous self-potential.
ArrayXcd apply_sn_hamiltonian(const ArrayXcd& phi, double mu, double kappa,
                              const KernelTable& kernel, const Grid1D& grid) {
  ArrayXcd kin = ifft(fft(phi) * (grid.k.square() / (2.0 * mu)).cast<Complex>());
  ArrayXd phi_self = self_potential(phi.abs2(), mu, kernel, grid);
  return kin - (kappa * mu) * phi_self.cast<Complex>() * phi;
}

struct ScfOutcome {
  double omega = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Self-consistent field refinement: diagonalize H[rho] with the circulant
/// spectral kinetic matrix, mix densities, repeat until the nonlinear
/// residual drops below tol. Overwrites phi with the refined profile.
ScfOutcome scf_refine(ArrayXcd& phi, const Grid1D& grid, double mu, double kappa,
                      const KernelTable& kernel, double tol) {
  const int N = grid.N;
  ArrayXd kin_row = ifft((grid.k.square() / (2.0 * mu)).cast<Complex>()).real();
  MatrixXd kin_mat(N, N);
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) kin_mat(a, b) = kin_row((a - b + N) % N);
  }

  ArrayXd rho = phi.abs2();
  const double mix = 0.5;
  ScfOutcome out;
  for (int it = 1; it <= 500; ++it) {
    ArrayXd v = -(kappa * mu) * self_potential(rho, mu, kernel, grid);
    MatrixXd h = kin_mat;
    h.diagonal() += v.matrix();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
    ArrayXd ground = es.eigenvectors().col(0).array() / std::sqrt(grid.dx);
    Eigen::Index peak;
    ground.abs().maxCoeff(&peak);
    if (ground(peak) < 0) ground = -ground;
    phi = ground.cast<Complex>();

    ArrayXcd h_phi = apply_sn_hamiltonian(phi, mu, kappa, kernel, grid);
    const double omega = (phi.conjugate() * h_phi).real().sum() * grid.dx;
    const double residual =
        std::sqrt((h_phi - omega * phi).abs2().sum() * grid.dx);
    if (residual < tol) {
      out.omega = omega;
      out.residual = residual;
      out.iterations = it;
      return out;
    }
    rho = (1.0 - mix) * rho + mix * ground.square();
  }
  throw NumericalError(
      "ground_state_sn: self-consistent refinement did not reach tol");
}

}  // namespace

SingleProfile gaussian_profile(const Grid1D& grid, double sigma0, double center,
                               double mass) {
  if (!(sigma0 > 0.0)) {
    throw ConfigError("gaussian_profile: sigma0 must be positive");
  }
  if (sigma0 < 2.0 * grid.dx) {
    throw ConfigError("gaussian_profile: sigma0 < 2*dx is unresolvable on this grid");
  }
  if (std::abs(center) >= grid.L / 2.0) {
    throw ConfigError("gaussian_profile: center outside the domain");
  }
  SingleProfile p;
  p.kind = ProfileKind::Gaussian;
  p.center = center;
  p.mass = mass;
  ArrayXd arg = -((grid.x - center).square()) / (4.0 * sigma0 * sigma0);
  p.amplitude = arg.exp().cast<Complex>();
  normalize(p.amplitude, grid.dx);
  return p;
}

GroundStateResult ground_state_sn(const Grid1D& grid, double mu, double kappa,
                                  const KernelTable& kernel,
                                  const GroundStateOptions& opts) {
  if (!(kappa * mu * mu > 0.0)) {
    throw NumericalError("ground_state_sn: kappa*mu^2 = 0, no self-bound state");
  }
  if (!(opts.dtau > 0.0)) {
    throw ConfigError("ground_state_sn: dtau must be positive");
  }

  ArrayXcd phi = opts.seed.has_value()
                     ? *opts.seed
                     : gaussian_profile(grid, opts.seed_sigma, 0.0, mu).amplitude;
  normalize(phi, grid.dx);
  ArrayXcd kinetic_decay =
      (-(opts.dtau / (2.0 * mu)) * grid.k.square()).exp().cast<Complex>();

  const int check_every = 50;
  double prev_variance = density_variance(phi, grid);
  double prev_residual = 1e300;
  int growing_checks = 0;
  int total_iters = 0;
  bool converged = false;

  GroundStateResult result;
  // Stage 1: imaginary-time contraction. The split step has an O(dtau^2)
  // residual floor, so stop once the residual stalls and refine below.
  for (int it = 1; it <= opts.max_iters; ++it) {
    ArrayXd v = (kappa * mu) * self_potential(phi.abs2(), mu, kernel, grid);
    phi *= ((opts.dtau / 2.0) * v).exp().cast<Complex>();
    phi = ifft(fft(phi) * kinetic_decay);
    v = (kappa * mu) * self_potential(phi.abs2(), mu, kernel, grid);
    phi *= ((opts.dtau / 2.0) * v).exp().cast<Complex>();
    normalize(phi, grid.dx);
    total_iters = it;

    if (it % check_every == 0 || it == opts.max_iters) {
      ArrayXcd h_phi = apply_sn_hamiltonian(phi, mu, kappa, kernel, grid);
      const double omega = (phi.conjugate() * h_phi).real().sum() * grid.dx;
      const double residual =
          std::sqrt((h_phi - omega * phi).abs2().sum() * grid.dx);
      if (residual < opts.tol) {
        result.omega = omega;
        result.residual = residual;
        converged = true;
        break;
      }
      if (residual > 0.99 * prev_residual) break;  // splitting-error floor
      prev_residual = residual;
      const double var = density_variance(phi, grid);
      growing_checks = (var > prev_variance) ? growing_checks + 1 : 0;
      prev_variance = var;
      if (growing_checks >= 20) {
        throw NumericalError("ground_state_sn: profile keeps flattening, no bound state");
      }
    }
  }

  if (converged) {
    result.iterations = total_iters;
  } else {
    // Stage 2: self-consistent diagonalization down to tol.
    ScfOutcome out = scf_refine(phi, grid, mu, kappa, kernel, opts.tol);
    result.omega = out.omega;
    result.residual = out.residual;
    result.iterations = total_iters + out.iterations;
  }

  // Fix the global phase so the peak amplitude is real positive.
  Eigen::Index peak;
  phi.abs().maxCoeff(&peak);
  phi *= std::exp(Complex(0.0, -std::arg(phi(peak))));
  if (phi.imag().abs().maxCoeff() > 1e-10) {
    throw NumericalError("ground_state_sn: converged profile not real after phase fixing");
  }
  phi = phi.real().cast<Complex>();
  normalize(phi, grid.dx);

  result.profile.amplitude = phi;
  result.profile.kind = ProfileKind::StationarySN;
  result.profile.center = 0.0;
  result.profile.mass = mu;
  return result;
}

SingleProfile translate_profile(const SingleProfile& p, const Grid1D& grid,
                                double shift) {
  SingleProfile out = p;
  out.center = p.center + shift;
  out.amplitude = spectral_shift(p.amplitude.real(), grid, shift).cast<Complex>();
  const double n = std::sqrt(out.amplitude.abs2().sum() * grid.dx);
  out.amplitude /= n;
  return out;
}

AssembledState assemble_state(StateKind kind, const SingleProfile& phi_left,
                              const SingleProfile& phi_right, const Grid1D& grid,
                              const Masses& masses) {
  const ArrayXcd& l = phi_left.amplitude;
  const ArrayXcd& r = phi_right.amplitude;
  const double s = (l.conjugate() * r).real().sum() * grid.dx;

  const int N = grid.N;
  MatrixXcd psi(N, N);
  switch (kind) {
    case StateKind::I:
      psi = l.matrix() * r.matrix().transpose();
      break;
    case StateKind::II: {
      VectorXcd sum = (l + r).matrix();
      psi = sum * sum.transpose();
      break;
    }
    case StateKind::III:
      psi = l.matrix() * l.matrix().transpose() + r.matrix() * r.matrix().transpose();
      break;
    case StateKind::IV:
      psi = l.matrix() * r.matrix().transpose() + r.matrix() * l.matrix().transpose();
      break;
  }

  AssembledState out;
  out.overlap = s;
  out.state.psi = psi / std::sqrt(psi.squaredNorm() * grid.dx * grid.dx);
  out.state.grid = grid;
  out.state.masses = masses;
  out.state.t = 0.0;
  return out;
}

}  // namespace sn2b
