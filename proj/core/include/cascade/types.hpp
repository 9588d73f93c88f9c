#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cascade {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Unusable input: bad run configurations, bad scenario wiring.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed file content (run configs, rate tables); the message carries the
// offending location.
struct ParseError : ConfigError {
  using ConfigError::ConfigError;
};

// Runtime numerical failure: singular solves, degenerate stationary
// manifolds, integrator breakdown, state-validity violations.
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometry and frequency of the emitter chain. Units: hbar = 1, distances in
// units of the transition wavelength, rates in units of the local decay rate
// of a single emitter, so omega0 = 1 is the standard choice.
struct ChainSpec {
  int n_atoms = 1;
  double omega0 = 1.0;
  double step = 0.0;        // interatomic spacing
  std::string dipole_note;  // free-text metadata, not used numerically

  void validate() const;  // throws std::invalid_argument
};

inline Eigen::Index hilbert_dim(int n_atoms) { return Eigen::Index{1} << n_atoms; }

// State-validity tolerances shared across the library.
inline constexpr double hermiticity_tolerance = 1e-12;
inline constexpr double trace_tolerance = 1e-10;
inline constexpr double positivity_tolerance = 1e-8;

// Throws NumericsError when rho violates the Hermiticity, unit-trace, or
// positivity tolerances; `where` names the call site in the message. The
// eigenvalue audit for positivity is skipped above dim 256, where it would
// dominate the cost of the computation being checked.
void check_density_matrix(const DenseMatrix& rho, const std::string& where);

}  // namespace cascade
