#pragma once

// Transport observables: excited populations, pump and extraction fluxes,
// and the transport efficiency chi from the dual pumped/unpumped protocol:
//
//   chi(t) = [E(rho(t)) - E(rho0(t))] / P(rho(t))
//
// where rho is the driven solution, rho0 the solution of the same chain with
// the pump switched off, P the energy flux entering through atom 1 and E the
// flux extracted at atom N. chi = 1 means every pumped quantum is delivered.

#include <vector>

#include "cascade/evolve.hpp"
#include "cascade/rates.hpp"
#include "cascade/types.hpp"

namespace cascade {

// p_e^(i) = Tr(sigma_i^dag sigma_i rho), one entry per atom.
RealVector excited_populations(const DenseMatrix& rho);

// P(rho) = (gamma_in/2) Tr(H D(sigma_1^dag)[rho]), evaluated literally from
// the operators. Closed form (the test oracle): gamma_in * omega0 * p_g^(1).
double pump_flux(const DenseMatrix& rho, const RateSet& rates,
                 const ChainSpec& chain);

// E(rho) = -(gamma_out/2) Tr(H D(sigma_N)[rho]); closed form
// gamma_out * omega0 * p_e^(N).
double extraction_flux(const DenseMatrix& rho, const RateSet& rates,
                       const ChainSpec& chain);

struct EfficiencyTrace {
  std::vector<double> times;
  std::vector<double> pump;                 // P along the pumped solution
  std::vector<double> extraction_pumped;    // E(rho(t))
  std::vector<double> extraction_unpumped;  // E(rho0(t))
  std::vector<double> chi;                  // NaN wherever P <= 1e-12
  double chi_stationary = 0.0;
};

// Evolves the pumped and unpumped solutions from the same initial state and
// assembles chi(t). chi is undefined (NaN), never silently zero, where the
// pump flux vanishes. chi_stationary comes from the stationary path below
// when N <= 7 and is NaN otherwise.
EfficiencyTrace efficiency_trace(const ChainSpec& chain, const RateSet& rates,
                                 const DenseMatrix& rho0,
                                 const std::vector<double>& times,
                                 const EvolveOptions& options = {},
                                 bool include_hamiltonian = true);

// chi at stationarity from the pumped steady state. The unpumped steady
// state must extract nothing (the undriven chain decays to ground; checked
// to 1e-9, not assumed), and a pump flux below 1e-12 makes the quantity
// undefined (NumericsError).
double stationary_efficiency(const ChainSpec& chain, const RateSet& rates,
                             bool include_hamiltonian = true);

}  // namespace cascade
