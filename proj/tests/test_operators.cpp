#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cascade/operators.hpp"
#include "cascade/types.hpp"
#include "support/oracle.hpp"

using namespace cascade;

namespace {

double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("lowering operator single atom") {
  const DenseMatrix sigma = DenseMatrix(lowering_operator(1, 1));
  CHECK(sigma(0, 1) == Complex{1.0, 0.0});
  CHECK(sigma.cwiseAbs().sum() == 1.0);
}

TEST_CASE("lowering operator embeds as sigma tensor identity") {
  const DenseMatrix sigma1 = DenseMatrix(lowering_operator(1, 2));
  CHECK(sigma1(0, 2) == Complex{1.0, 0.0});
  CHECK(sigma1(1, 3) == Complex{1.0, 0.0});
  CHECK(sigma1.cwiseAbs().sum() == 2.0);
}

TEST_CASE("lowering operator matches the dense kron construction") {
  for (int n = 1; n <= 4; ++n)
    for (int i = 1; i <= n; ++i)
      CHECK(max_abs(DenseMatrix(lowering_operator(i, n)) - oracle::lowering_dense(i, n)) == 0.0);
}

TEST_CASE("two-level algebra") {
  for (int n = 1; n <= 3; ++n) {
    for (int i = 1; i <= n; ++i) {
      const SparseMatrix sigma = lowering_operator(i, n);
      CHECK(DenseMatrix(SparseMatrix(sigma * sigma)).cwiseAbs().maxCoeff() == 0.0);
      const DenseMatrix completeness =
          DenseMatrix(SparseMatrix(sigma.adjoint() * sigma + sigma * sigma.adjoint()));
      CHECK(max_abs(completeness - DenseMatrix::Identity(completeness.rows(),
                                                         completeness.cols())) == 0.0);
    }
  }
}

TEST_CASE("operators on distinct atoms commute") {
  const int n = 3;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const DenseMatrix a = DenseMatrix(lowering_operator(i, n));
      const DenseMatrix b = DenseMatrix(lowering_operator(j, n));
      CHECK(max_abs(a * b - b * a) == 0.0);
      CHECK(max_abs(a * b.adjoint() - b.adjoint() * a) == 0.0);
    }
  }
}

TEST_CASE("lowering operator rejects bad indices") {
  CHECK_THROWS_AS(lowering_operator(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(lowering_operator(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(lowering_operator(1, 0), std::invalid_argument);
}

TEST_CASE("hamiltonian diagonal counts excitations") {
  ChainSpec chain;
  chain.n_atoms = 3;
  chain.omega0 = 1.0;
  const RealVector h = hamiltonian_diagonal(chain);
  const double expected[] = {0, 1, 1, 2, 1, 2, 2, 3};
  for (Eigen::Index b = 0; b < 8; ++b) CHECK(h(b) == expected[b]);

  chain.omega0 = 2.5;
  CHECK(hamiltonian_diagonal(chain)(7) == 7.5);
}

TEST_CASE("basis state ground") {
  const DenseMatrix rho = basis_state("g");
  CHECK(rho(0, 0) == Complex{1.0, 0.0});
  CHECK(max_abs(rho - rho * rho) == 0.0);
}

TEST_CASE("basis state bit convention puts atom 1 in the top bit") {
  const DenseMatrix ge = basis_state("ge");
  CHECK(ge(1, 1) == Complex{1.0, 0.0});

  // "gegg": atom 2 excited, index 4 of 16
  const DenseMatrix gegg = basis_state("gegg");
  CHECK(gegg.rows() == 16);
  CHECK(gegg(4, 4) == Complex{1.0, 0.0});
  CHECK(gegg.cwiseAbs().sum() == 1.0);

  const DenseMatrix eg = basis_state("eg");
  CHECK(eg(2, 2) == Complex{1.0, 0.0});
}

TEST_CASE("basis state is rank-1, idempotent, unit trace") {
  const DenseMatrix rho = basis_state("egge");
  CHECK(rho.trace() == Complex{1.0, 0.0});
  CHECK(max_abs(rho - rho * rho) == 0.0);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho, Eigen::EigenvaluesOnly);
  int rank = 0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > 0.5) ++rank;
  CHECK(rank == 1);
}

TEST_CASE("basis state rejects bad labels") {
  CHECK_THROWS_AS(basis_state(""), std::invalid_argument);
  CHECK_THROWS_AS(basis_state("gx"), std::invalid_argument);
  CHECK_THROWS_AS(basis_state("gE"), std::invalid_argument);
}

TEST_CASE("vectorize column-stacks") {
  const DenseMatrix half = DenseMatrix::Identity(2, 2) * 0.5;
  const Vector v = vectorize(half);
  CHECK(v(0) == Complex{0.5, 0.0});
  CHECK(v(1) == Complex{0.0, 0.0});
  CHECK(v(2) == Complex{0.0, 0.0});
  CHECK(v(3) == Complex{0.5, 0.0});
}

TEST_CASE("vec(A rho B) identity for random matrices") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix a = oracle::random_hermitian(rng, 2);
    const DenseMatrix b = oracle::random_hermitian(rng, 2);
    const DenseMatrix rho = oracle::random_density(rng, 2);
    const Vector left = vectorize(a * rho * b);
    const Vector right = oracle::kron_dense(b.transpose(), a) * vectorize(rho);
    CHECK((left - right).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("devectorize inverts vectorize") {
  std::mt19937 rng(42);
  const DenseMatrix rho = oracle::random_density(rng, 8);
  CHECK(max_abs(devectorize(vectorize(rho)) - rho) == 0.0);
}

TEST_CASE("devectorize rejects a length that is not a square power of two") {
  CHECK_THROWS_AS(devectorize(Vector::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(devectorize(Vector::Zero(9)), std::invalid_argument);
  CHECK_THROWS_AS(devectorize(Vector::Zero(0)), std::invalid_argument);
}

TEST_CASE("dissipator on the excited state is pure decay") {
  const SparseMatrix sigma = lowering_operator(1, 1);
  DenseMatrix excited = DenseMatrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  const DenseMatrix out = dissipator(sigma, excited);
  CHECK(out(0, 0) == Complex{2.0, 0.0});
  CHECK(out(1, 1) == Complex{-2.0, 0.0});

  const DenseMatrix ground = basis_state("g");
  CHECK(max_abs(dissipator(sigma, ground)) == 0.0);
}

TEST_CASE("dissipator and cross dissipator are traceless") {
  std::mt19937 rng(43);
  const int n = 3;
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix rho = oracle::random_density(rng, 8);
    for (int i = 1; i <= n; ++i) {
      CHECK(std::abs(dissipator(lowering_operator(i, n), rho).trace()) < 1e-12);
      for (int j = 1; j <= n; ++j)
        CHECK(std::abs(cross_dissipator(lowering_operator(i, n), lowering_operator(j, n), rho)
                           .trace()) < 1e-12);
    }
  }
}

TEST_CASE("cross dissipator with equal arguments reduces to the dissipator") {
  std::mt19937 rng(44);
  const SparseMatrix sigma = lowering_operator(2, 2);
  const DenseMatrix rho = oracle::random_density(rng, 4);
  CHECK(max_abs(cross_dissipator(sigma, sigma, rho) - dissipator(sigma, rho)) < 1e-14);
}

TEST_CASE("cross dissipator matches brute-force products") {
  std::mt19937 rng(45);
  const SparseMatrix s1 = lowering_operator(1, 2);
  const SparseMatrix s2 = lowering_operator(2, 2);
  const DenseMatrix d1 = oracle::lowering_dense(1, 2);
  const DenseMatrix d2 = oracle::lowering_dense(2, 2);

  const DenseMatrix ge = basis_state("ge");
  CHECK(max_abs(cross_dissipator(s1, s2, ge) - oracle::cross_dissipator_dense(d1, d2, ge)) ==
        0.0);

  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix rho = oracle::random_density(rng, 4);
    CHECK(max_abs(cross_dissipator(s1, s2, rho) -
                  oracle::cross_dissipator_dense(d1, d2, rho)) < 1e-14);
    CHECK(max_abs(cross_dissipator(s2, s1, rho) -
                  oracle::cross_dissipator_dense(d2, d1, rho)) < 1e-14);
  }
}

TEST_CASE("dissipator rejects dimension mismatch") {
  const SparseMatrix sigma = lowering_operator(1, 2);
  const DenseMatrix rho = basis_state("g");
  CHECK_THROWS_AS(dissipator(sigma, rho), std::invalid_argument);
  CHECK_THROWS_AS(cross_dissipator(sigma, lowering_operator(1, 1), basis_state("gg")),
                  std::invalid_argument);
}

TEST_CASE("density matrix checks catch each violation") {
  const DenseMatrix good = basis_state("gg");
  CHECK_NOTHROW(check_density_matrix(good, "test"));

  DenseMatrix not_hermitian = good;
  not_hermitian(0, 1) = Complex{0.1, 0.0};
  CHECK_THROWS_AS(check_density_matrix(not_hermitian, "test"), NumericsError);

  DenseMatrix bad_trace = good * 1.1;
  CHECK_THROWS_AS(check_density_matrix(bad_trace, "test"), NumericsError);

  DenseMatrix negative = DenseMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(check_density_matrix(negative, "test"), NumericsError);
}

TEST_CASE("chain spec validation names the offending field") {
  ChainSpec chain;
  chain.n_atoms = 0;
  CHECK_THROWS_WITH_AS(chain.validate(), "chain: n_atoms must be >= 1", std::invalid_argument);
  chain.n_atoms = 2;
  chain.omega0 = 0.0;
  CHECK_THROWS_AS(chain.validate(), std::invalid_argument);
  chain.omega0 = 1.0;
  chain.step = -0.1;
  CHECK_THROWS_AS(chain.validate(), std::invalid_argument);
}
