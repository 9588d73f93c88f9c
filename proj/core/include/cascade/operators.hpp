#pragma once

// Operator algebra for a chain of two-level emitters: lowering operators,
// product basis states, and column-stacking vectorization.
//
// Basis convention: computational basis index b in [0, 2^N); bit (N - i) of b
// is 1 iff atom i is excited. Atom 1 is the most significant bit, |g...g> is
// index 0. Every file format and observable in the library follows this.

#include <string>

#include "cascade/types.hpp"

namespace cascade {

// sigma_i = |g_i><e_i| embedded in the N-atom product space, 1-based i.
SparseMatrix lowering_operator(int i, int n_atoms);

// Diagonal of H_sys = sum_i omega0 sigma_i^dag sigma_i: entry omega0 * (set
// bits of the basis index).
RealVector hamiltonian_diagonal(const ChainSpec& chain);

// |psi><psi| for the product state described by one 'g'/'e' character per
// atom, atom 1 first.
DenseMatrix basis_state(const std::string& labels);

// Column stacking: vec(A rho B) = (B^T kron A) vec(rho); entry (a, b) of rho
// lands at vec index a + b * dim.
Vector vectorize(const DenseMatrix& rho);
DenseMatrix devectorize(const Vector& v);

// D(s)[rho] = 2 s rho s^dag - s^dag s rho - rho s^dag s. Traceless for any s.
DenseMatrix dissipator(const SparseMatrix& sigma, const DenseMatrix& rho);

// Two-operator dissipator Dt(A, B)[rho] = [B rho, A^dag] + [A, rho B^dag];
// reduces to D(s) at A = B = s. The A slot enters daggered on the left
// commutator, so a prefactor i on A flips sign there.
DenseMatrix cross_dissipator(const SparseMatrix& a, const SparseMatrix& b,
                             const DenseMatrix& rho);

}  // namespace cascade
