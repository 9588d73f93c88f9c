#include "cascade/scan.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cascade/csv.hpp"
#include "cascade/transport.hpp"

namespace cascade {

namespace {

constexpr double unit_bound_slack = 1e-9;

struct ScanPoint {
  ChainSpec chain;
  RateSet rates;
};

ScanPoint resolve_point(ScanParameter parameter, double value, const ScanConfig& base) {
  switch (parameter) {
    case ScanParameter::gamma12_ratio: {
      const auto* model = std::get_if<QuadratureModel>(&base.model);
      if (!model)
        throw ConfigError("gamma12_ratio scan needs the quadrature model");
      ChainSpec chain = base.chain;
      chain.n_atoms = 2;
      // Shared reciprocal parent at phi = pi/2, then specialize per branch.
      QuadratureModel parent = *model;
      parent.X = value * model->gamma_local;
      parent.phi = std::numbers::pi / 2.0;
      RateSet rates = quadrature_rate_set(parent, CouplingMode::reciprocal,
                                          base.gamma_in, base.gamma_out);
      if (base.mode == CouplingMode::unidirectional)
        rates = unidirectionalize_two_atom(rates);
      return {chain, rates};
    }
    case ScanParameter::phi: {
      const auto* model = std::get_if<QuadratureModel>(&base.model);
      if (!model)
        throw ConfigError("phi scan needs the quadrature model");
      ChainSpec chain = base.chain;
      chain.n_atoms = 2;
      QuadratureModel at_phase = *model;
      at_phase.phi = value;
      return {chain, quadrature_rate_set(at_phase, base.mode, base.gamma_in,
                                         base.gamma_out)};
    }
    case ScanParameter::chain_step: {
      const auto* model = std::get_if<SppChainModel>(&base.model);
      if (!model)
        throw ConfigError("chain_step scan needs the chain model");
      ChainSpec chain = base.chain;
      chain.step = value;
      return {chain,
              spp_chain_rate_set(chain, *model, base.mode, base.gamma_in, base.gamma_out)};
    }
    case ScanParameter::n_atoms: {
      const auto* model = std::get_if<SppChainModel>(&base.model);
      if (!model)
        throw ConfigError("n_atoms scan needs the chain model");
      const double rounded = std::round(value);
      if (std::abs(value - rounded) > 1e-9 || rounded < 1.0)
        throw ConfigError("n_atoms grid value " + format_double(value) +
                          " is not a positive integer");
      ChainSpec chain = base.chain;
      chain.n_atoms = static_cast<int>(rounded);
      return {chain,
              spp_chain_rate_set(chain, *model, base.mode, base.gamma_in, base.gamma_out)};
    }
  }
  throw std::invalid_argument("unknown scan parameter");
}

}  // namespace

std::string to_string(ScanParameter parameter) {
  switch (parameter) {
    case ScanParameter::gamma12_ratio: return "gamma12_ratio";
    case ScanParameter::phi: return "phi";
    case ScanParameter::chain_step: return "chain_step";
    case ScanParameter::n_atoms: return "n_atoms";
  }
  throw std::invalid_argument("unknown scan parameter");
}

ScanResult scan(ScanParameter parameter, const std::vector<double>& grid,
                const ScanConfig& base) {
  if (grid.empty()) throw ConfigError("scan grid is empty");

  ScanResult result;
  result.parameter = to_string(parameter);
  result.values = grid;
  result.chi.reserve(grid.size());
  result.warnings.reserve(grid.size());

  for (double value : grid) {
    std::vector<std::string> notes;
    double chi = std::numeric_limits<double>::quiet_NaN();
    try {
      const ScanPoint point = resolve_point(parameter, value, base);
      notes = validate_rates(point.rates, point.rates.mode);
      chi = stationary_efficiency(point.chain, point.rates);
      if (chi < -unit_bound_slack || chi > 1.0 + unit_bound_slack)
        notes.push_back("chi outside the unit transport bound: " + format_double(chi));
    } catch (const std::exception& err) {
      notes.push_back(std::string("point failed: ") + err.what());
    }
    result.chi.push_back(chi);
    result.warnings.push_back(std::move(notes));
  }
  return result;
}

}  // namespace cascade
