#include "cascade/liouvillian.hpp"

#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "cascade/operators.hpp"

namespace cascade {

namespace {

SparseMatrix sparse_identity(Eigen::Index dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out = Eigen::kroneckerProduct(a, b);
  return out;
}

void check_pair(const ChainSpec& chain, const RateSet& rates) {
  chain.validate();
  rates.validate_shape();
  if (chain.n_atoms != rates.n_atoms)
    throw std::invalid_argument("generator: chain has " + std::to_string(chain.n_atoms) +
                                " atoms but rates describe " + std::to_string(rates.n_atoms));
}

}  // namespace

SparseMatrix spre(const SparseMatrix& a) {
  return kron(sparse_identity(a.rows()), a);
}

SparseMatrix spost(const SparseMatrix& b) {
  const SparseMatrix bt = b.transpose();
  return kron(bt, sparse_identity(b.rows()));
}

SparseMatrix sandwich(const SparseMatrix& a, const SparseMatrix& b) {
  const SparseMatrix bt = b.transpose();
  return kron(bt, a);
}

SparseMatrix dissipator_super(const SparseMatrix& sigma) {
  const SparseMatrix sigma_dag = sigma.adjoint();
  const SparseMatrix ss = sigma_dag * sigma;
  return SparseMatrix(2.0 * sandwich(sigma, sigma_dag) - spre(ss) - spost(ss));
}

SparseMatrix cross_dissipator_super(const SparseMatrix& a, const SparseMatrix& b) {
  const SparseMatrix a_dag = a.adjoint();
  const SparseMatrix b_dag = b.adjoint();
  return SparseMatrix(sandwich(b, a_dag) - spre(SparseMatrix(a_dag * b)) +
                      sandwich(a, b_dag) - spost(SparseMatrix(b_dag * a)));
}

Liouvillian build_liouvillian(const ChainSpec& chain, const RateSet& rates,
                              bool include_hamiltonian) {
  check_pair(chain, rates);
  if (chain.n_atoms > 7)
    throw std::invalid_argument(
        "explicit generator is limited to 7 atoms; use the matrix-free path");

  const int n = chain.n_atoms;
  const Eigen::Index dim = hilbert_dim(n);
  const Complex im{0.0, 1.0};

  std::vector<SparseMatrix> sigma;
  sigma.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) sigma.push_back(lowering_operator(i, n));

  SparseMatrix L(dim * dim, dim * dim);

  if (include_hamiltonian) {
    const RealVector h = hamiltonian_diagonal(chain);
    SparseMatrix H(dim, dim);
    H.reserve(Eigen::VectorXi::Constant(static_cast<int>(dim), 1));
    for (Eigen::Index b = 0; b < dim; ++b) H.insert(b, b) = Complex{h(b), 0.0};
    H.makeCompressed();
    L += SparseMatrix(-im * (spre(H) - spost(H)));
  }

  for (int i = 0; i < n; ++i)
    L += SparseMatrix(0.5 * rates.gamma(i, i) * dissipator_super(sigma[static_cast<size_t>(i)]));

  // Cross terms: stored (i, j) couples upstream i to downstream j, and the
  // downstream operator takes the first slot (see the header note).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double gamma_ij = rates.gamma(i, j);
      const double g_ij = rates.g(i, j);
      if (gamma_ij == 0.0 && g_ij == 0.0) continue;
      const SparseMatrix& down = sigma[static_cast<size_t>(j)];
      const SparseMatrix& up = sigma[static_cast<size_t>(i)];
      if (gamma_ij != 0.0)
        L += SparseMatrix(0.5 * gamma_ij * cross_dissipator_super(down, up));
      if (g_ij != 0.0)
        L += SparseMatrix(g_ij * cross_dissipator_super(SparseMatrix(im * down), up));
    }
  }

  if (rates.gamma_in > 0.0) {
    const SparseMatrix raise1 = sigma[0].adjoint();
    L += SparseMatrix(0.5 * rates.gamma_in * dissipator_super(raise1));
  }
  if (rates.gamma_out > 0.0)
    L += SparseMatrix(0.5 * rates.gamma_out * dissipator_super(sigma[static_cast<size_t>(n - 1)]));

  L.makeCompressed();
  return Liouvillian{n, dim * dim, std::move(L), chain, rates};
}

DenseMatrix master_equation_rhs(const ChainSpec& chain, const RateSet& rates,
                                const DenseMatrix& rho, bool include_hamiltonian) {
  return MatrixFreeLiouvillian(chain, rates, include_hamiltonian).apply(rho);
}

MatrixFreeLiouvillian::MatrixFreeLiouvillian(const ChainSpec& chain, const RateSet& rates,
                                             bool include_hamiltonian)
    : chain_(chain), rates_(rates), include_hamiltonian_(include_hamiltonian) {
  check_pair(chain, rates);
  if (chain.n_atoms > 12)
    throw std::invalid_argument("matrix-free generator is limited to 12 atoms");
  const int n = chain.n_atoms;
  sigma_.reserve(static_cast<size_t>(n));
  sigma_dag_.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    sigma_.push_back(lowering_operator(i, n));
    sigma_dag_.push_back(SparseMatrix(sigma_.back().adjoint()));
  }
  h_diag_ = hamiltonian_diagonal(chain);
}

DenseMatrix MatrixFreeLiouvillian::apply(const DenseMatrix& rho) const {
  const Eigen::Index dim = hilbert_dim(chain_.n_atoms);
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("generator apply: state dimension mismatch");
  const int n = chain_.n_atoms;
  const Complex im{0.0, 1.0};

  DenseMatrix out = DenseMatrix::Zero(dim, dim);

  if (include_hamiltonian_) {
    // -i [H, rho] with diagonal H: entry (a, b) picks up -i (h_a - h_b).
    for (Eigen::Index b = 0; b < dim; ++b)
      for (Eigen::Index a = 0; a < dim; ++a)
        out(a, b) = -im * (h_diag_(a) - h_diag_(b)) * rho(a, b);
  }

  for (int i = 0; i < n; ++i)
    out += 0.5 * rates_.gamma(i, i) * dissipator(sigma_[static_cast<size_t>(i)], rho);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double gamma_ij = rates_.gamma(i, j);
      const double g_ij = rates_.g(i, j);
      if (gamma_ij == 0.0 && g_ij == 0.0) continue;
      const SparseMatrix& down = sigma_[static_cast<size_t>(j)];
      const SparseMatrix& up = sigma_[static_cast<size_t>(i)];
      if (gamma_ij != 0.0) out += 0.5 * gamma_ij * cross_dissipator(down, up, rho);
      if (g_ij != 0.0) out += g_ij * cross_dissipator(SparseMatrix(im * down), up, rho);
    }
  }

  if (rates_.gamma_in > 0.0)
    out += 0.5 * rates_.gamma_in * dissipator(sigma_dag_[0], rho);
  if (rates_.gamma_out > 0.0)
    out += 0.5 * rates_.gamma_out * dissipator(sigma_[static_cast<size_t>(n - 1)], rho);

  return out;
}

}  // namespace cascade
