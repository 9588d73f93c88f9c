#include "cascade/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cascade/operators.hpp"

namespace cascade {

namespace {

// Dormand-Prince 5(4) tableau. The last error weight row is b5 - b4, applied
// directly to the stages.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Scaled max-norm of the embedded error estimate; <= 1 accepts the step.
double error_norm(const DenseMatrix& err, const DenseMatrix& y0, const DenseMatrix& y1,
                  double rtol, double atol) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < err.cols(); ++c) {
    for (Eigen::Index r = 0; r < err.rows(); ++r) {
      const double scale =
          atol + rtol * std::max(std::abs(y0(r, c)), std::abs(y1(r, c)));
      worst = std::max(worst, std::abs(err(r, c)) / scale);
    }
  }
  return worst;
}

}  // namespace

Trajectory evolve(const RhsFn& rhs, const DenseMatrix& rho0,
                  const std::vector<double>& times, const EvolveOptions& options) {
  if (times.empty()) throw std::invalid_argument("evolve: empty sample grid");
  if (times.front() != 0.0) throw std::invalid_argument("evolve: sample grid must start at 0");
  for (size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw std::invalid_argument("evolve: sample grid must be strictly increasing");
  if (!(options.rtol > 0.0) || !(options.atol > 0.0))
    throw std::invalid_argument("evolve: tolerances must be positive");

  check_density_matrix(rho0, "evolve initial state");

  Trajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  traj.states.push_back(rho0);

  DenseMatrix y = rho0;
  double t = 0.0;
  double h = options.initial_step;
  if (options.max_step > 0.0) h = std::min(h, options.max_step);

  DenseMatrix k1, k2, k3, k4, k5, k6, k7, y_next, err;

  for (size_t target_idx = 1; target_idx < times.size(); ++target_idx) {
    const double target = times[target_idx];
    while (t < target) {
      const bool hits_target = h >= target - t;  // clamp lands on the sample point
      const double step = hits_target ? target - t : h;
      if (!(step > std::abs(t) * 1e-14) || !(t + step > t))
        throw NumericsError("evolve: step size underflow at t = " + std::to_string(t));

      k1 = rhs(y);
      k2 = rhs(y + step * (a21 * k1));
      k3 = rhs(y + step * (a31 * k1 + a32 * k2));
      k4 = rhs(y + step * (a41 * k1 + a42 * k2 + a43 * k3));
      k5 = rhs(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      k6 = rhs(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      y_next = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = rhs(y_next);
      err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const double norm = error_norm(err, y, y_next, options.rtol, options.atol);
      const bool accept = norm <= 1.0;
      if (accept) {
        t = hits_target ? target : t + step;
        y = 0.5 * (y_next + y_next.adjoint().eval());  // bound Hermiticity drift
      }
      // Classic step control; the 0.9 safety factor and [0.2, 5] limits are
      // the standard choices.
      const double factor =
          norm > 0.0 ? std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0) : 5.0;
      h = step * factor;
      if (options.max_step > 0.0) h = std::min(h, options.max_step);
      if (accept && hits_target) break;
    }
    check_density_matrix(y, "evolve at t = " + std::to_string(target));
    traj.states.push_back(y);
  }
  return traj;
}

Trajectory evolve(const Liouvillian& lv, const DenseMatrix& rho0,
                  const std::vector<double>& times, const EvolveOptions& options) {
  const Eigen::Index dim = hilbert_dim(lv.n_atoms);
  if (rho0.rows() != dim || rho0.cols() != dim)
    throw std::invalid_argument("evolve: state dimension does not match the generator");
  return evolve(
      [&lv](const DenseMatrix& rho) { return devectorize(lv.apply(vectorize(rho))); },
      rho0, times, options);
}

Trajectory evolve(const MatrixFreeLiouvillian& lv, const DenseMatrix& rho0,
                  const std::vector<double>& times, const EvolveOptions& options) {
  return evolve([&lv](const DenseMatrix& rho) { return lv.apply(rho); }, rho0, times,
                options);
}

}  // namespace cascade
