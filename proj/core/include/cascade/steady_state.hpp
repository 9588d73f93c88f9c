#pragma once

// Stationary solutions of the generator. The primary path is a deterministic
// direct solve; the oracle path reaches the same state through a full
// eigendecomposition and exists so the two can be cross-checked.

#include "cascade/liouvillian.hpp"
#include "cascade/types.hpp"

namespace cascade {

// The unique trace-one null vector of L, obtained by replacing the first row
// of L with the trace functional and solving the resulting system (fully
// deterministic, no iteration). Verifies the residual of the original system
// (infinity norm <= 1e-9) and the density-matrix tolerances. A degenerate
// stationary manifold is diagnosed and reported with its null-space
// dimension.
DenseMatrix steady_state(const Liouvillian& lv);

// Independent path, N <= 4: dense eigendecomposition of the generator,
// taking the eigenvector of the eigenvalue nearest zero, normalized by
// trace. Errors out if that eigenvalue exceeds 1e-6 in magnitude (no
// stationary state) or the candidate is traceless (degenerate manifold).
DenseMatrix steady_state_oracle(const Liouvillian& lv);

}  // namespace cascade
