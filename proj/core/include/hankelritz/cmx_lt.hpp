#pragma once

#include <cstddef>

#include "hankelritz/krylov_solver.hpp"
#include "hankelritz/moment_engine.hpp"

namespace hankelritz {

// Raw moments consumed by CMX-LT of order n (mu_0..mu_{2n+1}).
constexpr std::size_t cmx_lt_moments_used(std::size_t n) { return 2 * n + 2; }

/// Ground-state CMX-LT estimate E = I_1 - b^T A^-1 b with b_i = I_{i+1} and
/// A_ij = I_{i+j+1} (i, j = 1..n); order 0 is the mean energy I_1.
///
/// Throws InsufficientMoments when fewer than 2n+1 connected moments are
/// available and SingularConnectedMatrix when A is singular. The error
/// carries no RankReport; call `connected_matrix_rank` for diagnostics.
SpectralEstimate cmx_lt_estimate(const MomentTable& table, std::size_t n,
                                 const SolverOptions& options = {});

// Exact rank of the n x n connected-moment matrix A used by CMX-LT.
std::size_t connected_matrix_rank(const MomentTable& table, std::size_t n);

}  // namespace hankelritz
