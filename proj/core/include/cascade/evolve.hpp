#pragma once

// Adaptive Dormand-Prince 5(4) integration of the master equation. The
// generator is linear and at worst mildly stiff (all rates are order of the
// local decay), so an explicit embedded pair with tight tolerances is the
// right tool. Eigendecomposition-based propagation is deliberately absent:
// cascaded chains make the generator defective (repeated eigenvalues with
// nontrivial Jordan structure), and its eigenbasis is catastrophically
// ill-conditioned.

#include <functional>
#include <vector>

#include "cascade/liouvillian.hpp"
#include "cascade/types.hpp"

namespace cascade {

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 1e-3;
  double max_step = 0.0;  // 0 = no cap
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DenseMatrix> states;
};

// rho -> d rho / dt
using RhsFn = std::function<DenseMatrix(const DenseMatrix&)>;

// Integrates rho' = rhs(rho) from rho0 across the sample grid, which must be
// strictly increasing and start at 0. Steps are clamped to land exactly on
// sample points, every accepted state is re-Hermitized as (rho + rho^dag)/2
// to bound drift, and each sampled state is checked against the
// density-matrix tolerances. Step-size underflow raises NumericsError naming
// the time reached.
Trajectory evolve(const RhsFn& rhs, const DenseMatrix& rho0,
                  const std::vector<double>& times,
                  const EvolveOptions& options = {});

Trajectory evolve(const Liouvillian& lv, const DenseMatrix& rho0,
                  const std::vector<double>& times,
                  const EvolveOptions& options = {});

Trajectory evolve(const MatrixFreeLiouvillian& lv, const DenseMatrix& rho0,
                  const std::vector<double>& times,
                  const EvolveOptions& options = {});

}  // namespace cascade
