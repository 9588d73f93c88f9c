#include "cascade/transport.hpp"

#include <cmath>
#include <limits>

#include "cascade/liouvillian.hpp"
#include "cascade/operators.hpp"
#include "cascade/steady_state.hpp"

namespace cascade {

namespace {

constexpr double pump_floor = 1e-12;       // below this, chi is undefined
constexpr double unpumped_leak_tol = 1e-9; // undriven chain must extract nothing

int atoms_from_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim)
    throw std::invalid_argument("state dimension is not a power of two");
  return n;
}

// Tr(H_sys D[rho]) for diagonal H_sys, shared by both flux definitions.
double energy_weighted_trace(const DenseMatrix& dissipated, const ChainSpec& chain) {
  const RealVector h = hamiltonian_diagonal(chain);
  Complex tr{0.0, 0.0};
  for (Eigen::Index b = 0; b < dissipated.rows(); ++b) tr += h(b) * dissipated(b, b);
  return tr.real();
}

}  // namespace

RealVector excited_populations(const DenseMatrix& rho) {
  const Eigen::Index dim = rho.rows();
  const int n = atoms_from_dim(dim);
  RealVector p = RealVector::Zero(n);
  for (int i = 1; i <= n; ++i) {
    const Eigen::Index mask = Eigen::Index{1} << (n - i);
    double pop = 0.0;
    for (Eigen::Index b = 0; b < dim; ++b)
      if (b & mask) pop += rho(b, b).real();
    p(i - 1) = pop;
  }
  return p;
}

double pump_flux(const DenseMatrix& rho, const RateSet& rates, const ChainSpec& chain) {
  if (rates.gamma_in == 0.0) return 0.0;
  const SparseMatrix raise1 = lowering_operator(1, chain.n_atoms).adjoint();
  return 0.5 * rates.gamma_in * energy_weighted_trace(dissipator(raise1, rho), chain);
}

double extraction_flux(const DenseMatrix& rho, const RateSet& rates, const ChainSpec& chain) {
  if (rates.gamma_out == 0.0) return 0.0;
  const SparseMatrix lower_n = lowering_operator(chain.n_atoms, chain.n_atoms);
  return -0.5 * rates.gamma_out * energy_weighted_trace(dissipator(lower_n, rho), chain);
}

EfficiencyTrace efficiency_trace(const ChainSpec& chain, const RateSet& rates,
                                 const DenseMatrix& rho0, const std::vector<double>& times,
                                 const EvolveOptions& options, bool include_hamiltonian) {
  chain.validate();
  rates.validate_shape();

  RateSet unpumped = rates;
  unpumped.gamma_in = 0.0;

  Trajectory pumped_traj, unpumped_traj;
  if (chain.n_atoms <= 7) {
    pumped_traj = evolve(build_liouvillian(chain, rates, include_hamiltonian), rho0, times, options);
    unpumped_traj =
        evolve(build_liouvillian(chain, unpumped, include_hamiltonian), rho0, times, options);
  } else {
    pumped_traj = evolve(MatrixFreeLiouvillian(chain, rates, include_hamiltonian), rho0,
                         times, options);
    unpumped_traj = evolve(MatrixFreeLiouvillian(chain, unpumped, include_hamiltonian), rho0,
                           times, options);
  }

  EfficiencyTrace trace;
  trace.times = times;
  trace.pump.reserve(times.size());
  trace.extraction_pumped.reserve(times.size());
  trace.extraction_unpumped.reserve(times.size());
  trace.chi.reserve(times.size());
  for (size_t k = 0; k < times.size(); ++k) {
    const double p = pump_flux(pumped_traj.states[k], rates, chain);
    const double e_pumped = extraction_flux(pumped_traj.states[k], rates, chain);
    const double e_unpumped = extraction_flux(unpumped_traj.states[k], unpumped, chain);
    trace.pump.push_back(p);
    trace.extraction_pumped.push_back(e_pumped);
    trace.extraction_unpumped.push_back(e_unpumped);
    trace.chi.push_back(p > pump_floor ? (e_pumped - e_unpumped) / p
                                       : std::numeric_limits<double>::quiet_NaN());
  }

  trace.chi_stationary = chain.n_atoms <= 7
                             ? stationary_efficiency(chain, rates, include_hamiltonian)
                             : std::numeric_limits<double>::quiet_NaN();
  return trace;
}

double stationary_efficiency(const ChainSpec& chain, const RateSet& rates,
                             bool include_hamiltonian) {
  chain.validate();
  rates.validate_shape();
  if (chain.n_atoms > 7)
    throw std::invalid_argument("stationary efficiency needs the explicit generator (N <= 7)");

  const DenseMatrix rho = steady_state(build_liouvillian(chain, rates, include_hamiltonian));

  RateSet unpumped = rates;
  unpumped.gamma_in = 0.0;
  const DenseMatrix rho0 = steady_state(build_liouvillian(chain, unpumped, include_hamiltonian));

  const double e_unpumped = extraction_flux(rho0, unpumped, chain);
  if (std::abs(e_unpumped) > unpumped_leak_tol)
    throw NumericsError(
        "undriven chain did not relax to ground: residual extraction flux " +
        std::to_string(e_unpumped));

  const double p = pump_flux(rho, rates, chain);
  if (!(p > pump_floor))
    throw NumericsError("stationary efficiency undefined: pump flux " + std::to_string(p));

  return (extraction_flux(rho, rates, chain) - e_unpumped) / p;
}

}  // namespace cascade
