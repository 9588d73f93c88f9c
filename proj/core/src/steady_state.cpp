#include "cascade/steady_state.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/SparseLU>

#include "cascade/operators.hpp"

namespace cascade {

namespace {

constexpr double residual_tolerance = 1e-9;

// Count the null-space dimension of the dense generator; used only on the
// failure path to turn "solve failed" into an actionable report.
int null_space_dimension(const DenseMatrix& dense) {
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(dense);
  qr.setThreshold(1e-9);
  return static_cast<int>(dense.cols() - qr.rank());
}

[[noreturn]] void report_failure(const Liouvillian& lv, double residual) {
  if (lv.dim <= 1024) {
    const int nullity = null_space_dimension(DenseMatrix(lv.matrix));
    if (nullity > 1)
      throw NumericsError("steady state is not unique: null-space dimension " +
                          std::to_string(nullity));
  }
  throw NumericsError("steady-state solve failed (residual " + std::to_string(residual) + ")");
}

DenseMatrix finalize(const Vector& v, const char* where) {
  DenseMatrix rho = devectorize(v);
  rho = 0.5 * (rho + rho.adjoint().eval());
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-8)
    throw NumericsError(std::string(where) + ": candidate state is traceless");
  rho /= tr;
  check_density_matrix(rho, where);
  return rho;
}

}  // namespace

DenseMatrix steady_state(const Liouvillian& lv) {
  const Eigen::Index dim2 = lv.dim;
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(dim2))));

  // Replace the first row of L with the trace functional: the entries of
  // vec(rho) holding the diagonal of rho sit at indices k * (dim + 1).
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<size_t>(lv.matrix.nonZeros()) + static_cast<size_t>(dim));
  for (Eigen::Index outer = 0; outer < lv.matrix.outerSize(); ++outer) {
    for (SparseMatrix::InnerIterator it(lv.matrix, outer); it; ++it) {
      if (it.row() != 0) entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Eigen::Index k = 0; k < dim; ++k)
    entries.emplace_back(0, k * (dim + 1), Complex{1.0, 0.0});

  SparseMatrix system(dim2, dim2);
  system.setFromTriplets(entries.begin(), entries.end());
  system.makeCompressed();

  Vector rhs = Vector::Zero(dim2);
  rhs(0) = Complex{1.0, 0.0};

  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(system);
  if (lu.info() != Eigen::Success) report_failure(lv, std::nan(""));

  const Vector v = lu.solve(rhs);
  if (lu.info() != Eigen::Success) report_failure(lv, std::nan(""));

  const double residual = (lv.matrix * v).cwiseAbs().maxCoeff();
  if (!(residual <= residual_tolerance)) report_failure(lv, residual);

  return finalize(v, "steady state");
}

DenseMatrix steady_state_oracle(const Liouvillian& lv) {
  if (lv.n_atoms > 4)
    throw std::invalid_argument("steady-state oracle is limited to 4 atoms");

  Eigen::ComplexEigenSolver<DenseMatrix> es(DenseMatrix(lv.matrix));
  if (es.info() != Eigen::Success)
    throw NumericsError("steady-state oracle: eigendecomposition failed");

  Eigen::Index best = 0;
  double best_abs = std::abs(es.eigenvalues()(0));
  for (Eigen::Index k = 1; k < es.eigenvalues().size(); ++k) {
    const double a = std::abs(es.eigenvalues()(k));
    if (a < best_abs) {
      best = k;
      best_abs = a;
    }
  }
  if (best_abs > 1e-6)
    throw NumericsError("no stationary state: eigenvalue nearest zero has magnitude " +
                        std::to_string(best_abs));

  return finalize(es.eigenvectors().col(best), "steady-state oracle");
}

}  // namespace cascade
