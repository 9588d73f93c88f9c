#pragma once

// Stationary-efficiency sweeps over model parameters, one independent
// steady-state solve per grid point. Points are pure functions of (value,
// base config); failures are recorded per point and the sweep continues.

#include <string>
#include <variant>
#include <vector>

#include "cascade/rates.hpp"
#include "cascade/types.hpp"

namespace cascade {

enum class ScanParameter { gamma12_ratio, phi, chain_step, n_atoms };

std::string to_string(ScanParameter parameter);

struct ScanConfig {
  ChainSpec chain;  // n_atoms is the base for chain_step, step for n_atoms
  CouplingMode mode = CouplingMode::unidirectional;
  std::variant<QuadratureModel, SppChainModel> model;
  double gamma_in = 1.5;
  double gamma_out = 1.5;
};

struct ScanResult {
  std::string parameter;
  std::vector<double> values;
  std::vector<double> chi;                         // NaN where a point failed
  std::vector<std::vector<std::string>> warnings;  // per-point diagnostics
};

// gamma12_ratio: two-atom sweep of the coupling-to-local-decay ratio at
//   phi = pi/2 (quadrature model required). Both branches derive from the
//   same reciprocal parent set with gamma12 = ratio * gamma_local; the
//   unidirectional branch is the two-atom unidirectionalization of that
//   parent (back-action zeroed, local decays halved), so the two curves share
//   their x-axis and compare like for like. Ratios beyond 1 describe an
//   amplifying one-way channel; chi can then exceed 1 and the point carries a
//   warning rather than an error.
// phi: two-atom sweep of the quadrature phase at fixed X, using the model
//   directly in the configured mode.
// chain_step: sweep of the interatomic spacing (chain-model required).
// n_atoms: sweep of the chain length at fixed spacing; grid values must be
//   integers.
ScanResult scan(ScanParameter parameter, const std::vector<double>& grid,
                const ScanConfig& base);

}  // namespace cascade
