#pragma once

// Construction, transformation, and validation of the rate matrices that
// encode the photonic environment.
//
// Direction convention: gamma(i-1, j-1) and g(i-1, j-1) couple the upstream
// atom i to the downstream atom j (0-based storage, 1-based everywhere a
// human reads indices). A downstream-unidirectional set therefore has zero
// entries wherever the first index is the downstream one, i.e. below the
// diagonal; an upstream-unidirectional set (reversed bias) is its transpose.

#include <string>
#include <vector>

#include "cascade/types.hpp"

namespace cascade {

enum class CouplingMode { unidirectional, reciprocal };
enum class BiasDirection { downstream, upstream };

std::string to_string(CouplingMode mode);
std::string to_string(BiasDirection direction);

struct RateSet {
  int n_atoms = 0;
  RealMatrix gamma;       // dissipative rates; diagonal = local decay, > 0
  RealMatrix g;           // coherent couplings; diagonal identically 0
  double gamma_in = 0.0;  // incoherent pump on atom 1
  double gamma_out = 0.0; // extraction on atom N
  CouplingMode mode = CouplingMode::reciprocal;
  BiasDirection bias = BiasDirection::downstream;  // meaningful when unidirectional

  // Structural checks every consumer relies on: square shapes, positive
  // diagonal decay, zero g diagonal, nonnegative drives. Throws
  // std::invalid_argument.
  void validate_shape() const;
};

// Two-atom parametrization of an emitter pair on a lossy guided mode:
//   g12 = (X/2) cos(phi),  gamma12 = X sin(phi),  gamma11 = gamma22.
// phi is normalized into [0, 2pi).
struct QuadratureModel {
  double X = 0.0;
  double phi = 0.0;
  double gamma_local = 1.0;
};

// Parametric N-atom chain on a guided surface mode: amplitude decays
// exponentially with separation, phase winds with the mode wavenumber.
struct SppChainModel {
  double gamma_local = 1.0;   // local decay, also the d -> 0 coupling limit
  double decay_length = 5.0;  // propagation loss length, units of the wavelength
  double wavenumber = 1.0;    // units of 2pi/wavelength
  BiasDirection direction = BiasDirection::downstream;
};

RateSet quadrature_rate_set(const QuadratureModel& model, CouplingMode mode,
                            double gamma_in, double gamma_out);

// Atoms at x_m = (m-1)*chain.step. For separation d: X(d) = gamma_local *
// exp(-d/decay_length) and phi(d) = pi/2 + 2 pi * wavenumber * d, so that
// gamma_ij -> gamma_ii as d -> 0. Unidirectional mode populates only
// upstream->downstream pairs; reciprocal mode mirrors them.
RateSet spp_chain_rate_set(const ChainSpec& chain, const SppChainModel& model,
                           CouplingMode mode, double gamma_in, double gamma_out);

// Symmetrize the off-diagonals of a unidirectional set and double the local
// decays: the reciprocal stand-in used for like-for-like efficiency
// comparisons. Rejects reciprocal input (mode error).
RateSet make_artificially_reciprocal(const RateSet& rates);

// The inverse recipe at N = 2: zero the upstream-directed pair of a
// reciprocal set and halve the local decays.
RateSet unidirectionalize_two_atom(const RateSet& rates);

// Swap upstream and downstream roles by transposing both matrices; local
// decays and drives are untouched. On a reciprocal set this is the identity.
RateSet reverse_bias(const RateSet& rates);

// Diagnostics only, never mutation. Reciprocal mode checks symmetry and the
// positive semidefiniteness of gamma (for N = 2 this is gamma12 <= gamma11);
// unidirectional mode checks the directional zero pattern and applies no PSD
// condition. Empty result = no findings.
std::vector<std::string> validate_rates(const RateSet& rates, CouplingMode mode);
std::vector<std::string> validate_rates(const RateSet& rates);

}  // namespace cascade
