#include "cascade/operators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cascade {

void ChainSpec::validate() const {
  if (n_atoms < 1) throw std::invalid_argument("chain: n_atoms must be >= 1");
  if (!(omega0 > 0.0)) throw std::invalid_argument("chain: omega0 must be > 0");
  if (!(step >= 0.0)) throw std::invalid_argument("chain: step must be >= 0");
}

void check_density_matrix(const DenseMatrix& rho, const std::string& where) {
  const Eigen::Index dim = rho.rows();
  if (rho.cols() != dim) throw NumericsError(where + ": state is not square");

  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > hermiticity_tolerance)
    throw NumericsError(where + ": state not Hermitian (max deviation " +
                        std::to_string(herm) + ")");

  const Complex tr = rho.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > trace_tolerance)
    throw NumericsError(where + ": state trace deviates from 1 by " +
                        std::to_string(std::abs(tr - Complex{1.0, 0.0})));

  // The eigensolve is cubic; above dim 256 it would dwarf the computation
  // being audited, so positivity is only checked where it is cheap.
  if (dim <= 256) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(
        DenseMatrix(0.5 * (rho + rho.adjoint())), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -positivity_tolerance)
      throw NumericsError(where + ": state not positive (min eigenvalue " +
                          std::to_string(min_eig) + ")");
  }
}

SparseMatrix lowering_operator(int i, int n_atoms) {
  if (n_atoms < 1) throw std::invalid_argument("lowering_operator: n_atoms must be >= 1");
  if (i < 1 || i > n_atoms)
    throw std::invalid_argument("lowering_operator: atom index " + std::to_string(i) +
                                " out of range 1.." + std::to_string(n_atoms));
  const Eigen::Index dim = hilbert_dim(n_atoms);
  const Eigen::Index mask = Eigen::Index{1} << (n_atoms - i);

  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<size_t>(dim / 2));
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (b & mask) entries.emplace_back(b ^ mask, b, Complex{1.0, 0.0});
  }
  SparseMatrix sigma(dim, dim);
  sigma.setFromTriplets(entries.begin(), entries.end());
  return sigma;
}

RealVector hamiltonian_diagonal(const ChainSpec& chain) {
  chain.validate();
  const Eigen::Index dim = hilbert_dim(chain.n_atoms);
  RealVector h(dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    h(b) = chain.omega0 * std::popcount(static_cast<unsigned long long>(b));
  return h;
}

DenseMatrix basis_state(const std::string& labels) {
  const int n = static_cast<int>(labels.size());
  if (n < 1) throw std::invalid_argument("basis_state: empty label string");
  Eigen::Index index = 0;
  for (int p = 0; p < n; ++p) {
    const char c = labels[static_cast<size_t>(p)];
    if (c == 'e') {
      index |= Eigen::Index{1} << (n - 1 - p);  // atom p+1 excited
    } else if (c != 'g') {
      throw std::invalid_argument("basis_state: invalid character '" +
                                  std::string(1, c) + "' (want 'g' or 'e')");
    }
  }
  const Eigen::Index dim = hilbert_dim(n);
  DenseMatrix rho = DenseMatrix::Zero(dim, dim);
  rho(index, index) = Complex{1.0, 0.0};
  return rho;
}

Vector vectorize(const DenseMatrix& rho) {
  // Eigen stores column-major, so the flat view is exactly column stacking.
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

DenseMatrix devectorize(const Vector& v) {
  const auto len = v.size();
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(len))));
  if (dim * dim != len || dim == 0 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument(
        "devectorize: length " + std::to_string(len) +
        " is not the square of a power of two");
  return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

DenseMatrix dissipator(const SparseMatrix& sigma, const DenseMatrix& rho) {
  if (sigma.rows() != rho.rows() || sigma.cols() != rho.cols())
    throw std::invalid_argument("dissipator: operator/state dimension mismatch");
  const SparseMatrix sigma_dag = sigma.adjoint();
  const SparseMatrix ss = sigma_dag * sigma;
  DenseMatrix out = 2.0 * (sigma * (rho * sigma_dag));
  out.noalias() -= ss * rho;
  out.noalias() -= rho * ss;
  return out;
}

DenseMatrix cross_dissipator(const SparseMatrix& a, const SparseMatrix& b,
                             const DenseMatrix& rho) {
  if (a.rows() != rho.rows() || b.rows() != rho.rows() || a.cols() != rho.cols() ||
      b.cols() != rho.cols())
    throw std::invalid_argument("cross_dissipator: operator/state dimension mismatch");
  const SparseMatrix a_dag = a.adjoint();
  const SparseMatrix b_dag = b.adjoint();
  // [b rho, a^dag] + [a, rho b^dag]
  DenseMatrix out = (b * rho) * a_dag;
  out.noalias() -= (a_dag * b) * rho;
  out.noalias() += (a * rho) * b_dag;
  out.noalias() -= rho * (b_dag * a);
  return out;
}

}  // namespace cascade
