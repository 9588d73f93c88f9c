#pragma once

// Assembly of the master-equation generator in column-stacking vectorization:
//
//   rho' = -i [H, rho]
//        + sum_i (gamma_ii / 2) D(sigma_i)[rho]
//        + sum_{i != j} [ (gamma_ij / 2) Dt(sigma_j, sigma_i)
//                         + g_ij Dt(i sigma_j, sigma_i) ][rho]
//        + (gamma_in / 2) D(sigma_1^dag)[rho]
//        + (gamma_out / 2) D(sigma_N)[rho]
//
// The cross terms follow the stored direction convention: gamma_ij couples
// upstream atom i to downstream atom j, and the downstream operator takes the
// first slot of Dt. That ordering is what shields the most-upstream atom from
// back-action in a one-way environment; for reciprocal sets the i<->j sum is
// slot-symmetric, so the ordering is invisible there.
//
// The explicit path stores the 4^N x 4^N superoperator sparsely (N <= 7); the
// matrix-free path applies the equation term by term to a density matrix and
// covers trajectories up to N = 12.

#include <vector>

#include "cascade/rates.hpp"
#include "cascade/types.hpp"

namespace cascade {

// Superoperator building blocks in the vec(A rho B) = (B^T kron A)vec(rho)
// convention.
SparseMatrix spre(const SparseMatrix& a);                          // rho -> a rho
SparseMatrix spost(const SparseMatrix& b);                         // rho -> rho b
SparseMatrix sandwich(const SparseMatrix& a, const SparseMatrix& b);  // rho -> a rho b
SparseMatrix dissipator_super(const SparseMatrix& sigma);
SparseMatrix cross_dissipator_super(const SparseMatrix& a, const SparseMatrix& b);

struct Liouvillian {
  int n_atoms = 0;
  Eigen::Index dim = 0;  // 4^N
  SparseMatrix matrix;
  ChainSpec chain;
  RateSet rates;

  Vector apply(const Vector& v) const { return matrix * v; }
};

Liouvillian build_liouvillian(const ChainSpec& chain, const RateSet& rates,
                              bool include_hamiltonian = true);

// Literal term-by-term right-hand side acting on a density matrix; the
// workhorse of the matrix-free path.
DenseMatrix master_equation_rhs(const ChainSpec& chain, const RateSet& rates,
                                const DenseMatrix& rho,
                                bool include_hamiltonian = true);

// Applies the same generator without ever forming it, with the lowering
// operators cached. Valid for any N the basis supports; intended for
// 8 <= N <= 12 where the explicit superoperator is out of reach.
class MatrixFreeLiouvillian {
 public:
  MatrixFreeLiouvillian(const ChainSpec& chain, const RateSet& rates,
                        bool include_hamiltonian = true);

  DenseMatrix apply(const DenseMatrix& rho) const;

  const ChainSpec& chain() const { return chain_; }
  const RateSet& rates() const { return rates_; }

 private:
  ChainSpec chain_;
  RateSet rates_;
  bool include_hamiltonian_;
  std::vector<SparseMatrix> sigma_;          // lowering operators, one per atom
  std::vector<SparseMatrix> sigma_dag_;
  RealVector h_diag_;
};

}  // namespace cascade
