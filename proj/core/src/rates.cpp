#include "cascade/rates.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cascade {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  double p = std::fmod(phi, two_pi);
  if (p < 0.0) p += two_pi;
  return p;
}

// Locale-free short rendering for diagnostic text.
std::string brief(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_string(CouplingMode mode) {
  return mode == CouplingMode::unidirectional ? "unidirectional" : "reciprocal";
}

std::string to_string(BiasDirection direction) {
  return direction == BiasDirection::downstream ? "downstream" : "upstream";
}

void RateSet::validate_shape() const {
  if (n_atoms < 1) throw std::invalid_argument("rates: n_atoms must be >= 1");
  if (gamma.rows() != n_atoms || gamma.cols() != n_atoms)
    throw std::invalid_argument("rates: gamma must be n_atoms x n_atoms");
  if (g.rows() != n_atoms || g.cols() != n_atoms)
    throw std::invalid_argument("rates: g must be n_atoms x n_atoms");
  for (int i = 0; i < n_atoms; ++i) {
    if (!(gamma(i, i) > 0.0))
      throw std::invalid_argument("rates: local decay gamma(" + std::to_string(i + 1) +
                                  "," + std::to_string(i + 1) + ") must be > 0");
    if (g(i, i) != 0.0)
      throw std::invalid_argument("rates: coherent diagonal g(" + std::to_string(i + 1) +
                                  "," + std::to_string(i + 1) + ") must be 0");
  }
  if (gamma_in < 0.0) throw std::invalid_argument("rates: gamma_in must be >= 0");
  if (gamma_out < 0.0) throw std::invalid_argument("rates: gamma_out must be >= 0");
}

RateSet quadrature_rate_set(const QuadratureModel& model, CouplingMode mode,
                            double gamma_in, double gamma_out) {
  if (model.X < 0.0) throw std::invalid_argument("quadrature model: X must be >= 0");
  if (!(model.gamma_local > 0.0))
    throw std::invalid_argument("quadrature model: gamma_local must be > 0");

  const double phi = wrap_phase(model.phi);
  const double g12 = 0.5 * model.X * std::cos(phi);
  const double gamma12 = model.X * std::sin(phi);

  RateSet rs;
  rs.n_atoms = 2;
  rs.gamma = RealMatrix::Zero(2, 2);
  rs.g = RealMatrix::Zero(2, 2);
  rs.gamma(0, 0) = rs.gamma(1, 1) = model.gamma_local;
  rs.gamma(0, 1) = gamma12;
  rs.g(0, 1) = g12;
  if (mode == CouplingMode::reciprocal) {
    rs.gamma(1, 0) = gamma12;
    rs.g(1, 0) = g12;
  }
  rs.gamma_in = gamma_in;
  rs.gamma_out = gamma_out;
  rs.mode = mode;
  rs.bias = BiasDirection::downstream;
  rs.validate_shape();
  return rs;
}

RateSet spp_chain_rate_set(const ChainSpec& chain, const SppChainModel& model,
                           CouplingMode mode, double gamma_in, double gamma_out) {
  chain.validate();
  if (!(model.gamma_local > 0.0))
    throw std::invalid_argument("chain model: gamma_local must be > 0");
  if (!(model.decay_length > 0.0))
    throw std::invalid_argument("chain model: decay_length must be > 0");
  if (model.wavenumber < 0.0)
    throw std::invalid_argument("chain model: wavenumber must be >= 0");

  const int n = chain.n_atoms;
  RateSet rs;
  rs.n_atoms = n;
  rs.gamma = RealMatrix::Zero(n, n);
  rs.g = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) rs.gamma(i, i) = model.gamma_local;

  // Atoms at x_m = (m-1)*step. With the mode running toward +x the upstream
  // member of a pair is the lower index; toward -x it is the higher one.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double d = chain.step * (b - a);
      const double X = model.gamma_local * std::exp(-d / model.decay_length);
      const double phi = std::numbers::pi / 2.0 + two_pi * model.wavenumber * d;
      const double gamma_pair = X * std::sin(phi);
      const double g_pair = 0.5 * X * std::cos(phi);
      const int up = model.direction == BiasDirection::downstream ? a : b;
      const int down = model.direction == BiasDirection::downstream ? b : a;
      rs.gamma(up, down) = gamma_pair;
      rs.g(up, down) = g_pair;
      if (mode == CouplingMode::reciprocal) {
        rs.gamma(down, up) = gamma_pair;
        rs.g(down, up) = g_pair;
      }
    }
  }
  rs.gamma_in = gamma_in;
  rs.gamma_out = gamma_out;
  rs.mode = mode;
  rs.bias = model.direction;
  rs.validate_shape();
  return rs;
}

RateSet make_artificially_reciprocal(const RateSet& rates) {
  rates.validate_shape();
  if (rates.mode != CouplingMode::unidirectional)
    throw std::invalid_argument(
        "make_artificially_reciprocal: input must be unidirectional, got reciprocal");

  RateSet out = rates;
  out.gamma = rates.gamma + RealMatrix(rates.gamma.transpose());
  out.g = rates.g + RealMatrix(rates.g.transpose());
  // The off-diagonals live in one triangle only, so adding the transpose
  // symmetrizes them unchanged while exactly doubling the diagonal.
  out.mode = CouplingMode::reciprocal;
  out.bias = BiasDirection::downstream;
  out.validate_shape();
  return out;
}

RateSet unidirectionalize_two_atom(const RateSet& rates) {
  rates.validate_shape();
  if (rates.n_atoms != 2)
    throw std::invalid_argument("unidirectionalize_two_atom: requires exactly 2 atoms, got " +
                                std::to_string(rates.n_atoms));
  if (rates.mode != CouplingMode::reciprocal)
    throw std::invalid_argument("unidirectionalize_two_atom: input must be reciprocal");

  RateSet out = rates;
  out.gamma(1, 0) = 0.0;
  out.g(1, 0) = 0.0;
  out.gamma(0, 0) = 0.5 * rates.gamma(0, 0);  // exact in binary arithmetic,
  out.gamma(1, 1) = 0.5 * rates.gamma(1, 1);  // inverse of the doubling above
  out.mode = CouplingMode::unidirectional;
  out.bias = BiasDirection::downstream;
  out.validate_shape();
  return out;
}

RateSet reverse_bias(const RateSet& rates) {
  rates.validate_shape();
  RateSet out = rates;
  out.gamma = rates.gamma.transpose();
  out.g = rates.g.transpose();
  if (rates.mode == CouplingMode::unidirectional)
    out.bias = rates.bias == BiasDirection::downstream ? BiasDirection::upstream
                                                       : BiasDirection::downstream;
  return out;
}

std::vector<std::string> validate_rates(const RateSet& rates, CouplingMode mode) {
  rates.validate_shape();
  std::vector<std::string> findings;
  const int n = rates.n_atoms;

  if (mode == CouplingMode::reciprocal) {
    const double asym_gamma = (rates.gamma - rates.gamma.transpose()).cwiseAbs().maxCoeff();
    const double asym_g = (rates.g - rates.g.transpose()).cwiseAbs().maxCoeff();
    if (asym_gamma > 0.0)
      findings.push_back("reciprocal gamma is not symmetric (max asymmetry " +
                         brief(asym_gamma) + ")");
    if (asym_g > 0.0)
      findings.push_back("reciprocal g is not symmetric (max asymmetry " + brief(asym_g) + ")");

    // A physical reciprocal environment needs PSD dissipative rates; for two
    // atoms this is gamma12 <= gamma11.
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(
        RealMatrix(0.5 * (rates.gamma + rates.gamma.transpose())), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-12)
      findings.push_back("dissipative matrix not positive semidefinite (eigenvalue " +
                         brief(min_eig) + ")");
  } else {
    // One-way propagation: every pair whose first index is downstream of its
    // second must carry zero rates. No PSD condition applies.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const bool forbidden = rates.bias == BiasDirection::downstream ? i > j : i < j;
        if (forbidden && (rates.gamma(i, j) != 0.0 || rates.g(i, j) != 0.0))
          findings.push_back("unidirectional set couples against the bias at entry " +
                             std::to_string(i + 1) + "->" + std::to_string(j + 1));
      }
    }
  }
  return findings;
}

std::vector<std::string> validate_rates(const RateSet& rates) {
  return validate_rates(rates, rates.mode);
}

}  // namespace cascade
