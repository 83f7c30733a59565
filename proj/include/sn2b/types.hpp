#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sn2b {

using Complex = std::complex<double>;

using ArrayXd  = Eigen::ArrayXd;
using ArrayXcd = Eigen::ArrayXcd;
using MatrixXd = Eigen::MatrixXd;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;

/// Self-gravity coupling (kappa) and pair-gravity coupling (gamma).
struct Couplings {
  double kappa = 1.0;
  double gamma = 1.0;
};

struct Masses {
  double mu1 = 1.0;
  double mu2 = 1.0;
};

/// Thrown when a solver leaves its validity domain (norm blowup,
/// imaginary-time stall, missing bound state).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace sn2b
