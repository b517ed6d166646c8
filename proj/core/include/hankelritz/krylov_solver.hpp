#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "hankelritz/big_real.hpp"
#include "hankelritz/moment_engine.hpp"
#include "hankelritz/xprec_linalg.hpp"

namespace hankelritz {

enum class Method { kRrvm, kCmpa, kBishop, kCmxLt };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

/// Approximate eigenvalues produced by one method at one order.
struct SpectralEstimate {
  Method method = Method::kRrvm;
  std::size_t order = 0;
  std::vector<BigReal> values;  // ascending, repeats kept
  std::size_t moments_used = 0;
  std::optional<RankReport> rank_report;
  // Set when the Krylov space collapsed and the pencil was truncated.
  bool krylov_collapse = false;
  // Exact ground value when the (truncated) pencil is 1 x 1.
  std::optional<Rational> exact_value;
};

/// Hankel pencil (H, S) with H_ji = nu_{i+j+1} and S_ji = nu_{i+j}, built
/// from normalized moments (the overall scale of the moments drops out of
/// every generalized eigenvalue).
struct HankelPencil {
  std::size_t order = 0;
  SymMatrix h;
  SymMatrix s;
  const MomentTable* source = nullptr;
};

struct SolverOptions {
  long precision_bits = kDefaultPrecisionBits;
  // Relative Cholesky pivot tolerance; defaults to 2^-(precision/2).
  std::optional<BigReal> pivot_tolerance;
  // Bracket doublings allowed while searching for all N polynomial roots.
  int max_bracket_doublings = 200;
};

// Throws InsufficientMoments if the table stops before nu_{2N-1}.
HankelPencil build_pencil(const MomentTable& table, std::size_t n,
                          const SolverOptions& options = {});

// Generalized eigenvalues of H c = W S c via S = L L^T and Jacobi on
// L^-1 H L^-T. A rank-deficient S is truncated to its leading full-rank block
// and the estimate is flagged with krylov_collapse.
SpectralEstimate rrvm_eigenvalues(const HankelPencil& pencil, const SolverOptions& options = {});

// Search interval for polynomial roots: nu_1 +/- 4 sqrt(I_2) N.
struct RootBracket {
  BigReal center;
  BigReal half_width;
};

RootBracket default_root_bracket(const MomentTable& table, std::size_t n, long bits);

struct CmpaCoefficients {
  std::vector<BigReal> p;  // p_0 = 1, ..., p_N
  RootBracket bracket;
  std::size_t moments_used = 0;
};

// Solves sum_{j=1}^N p_j nu_{i+j} = -nu_i (i = 0..N-1) with p_0 = 1. Throws
// SingularMomentMatrix when the exact moment matrix is rank deficient.
CmpaCoefficients cmpa_coefficients(const MomentTable& table, std::size_t n,
                                   const SolverOptions& options = {});

// Real roots of sum_j p_j W^j. Throws RootCountMismatch when fewer than N
// roots are found inside the widening bracket.
SpectralEstimate cmpa_roots(const CmpaCoefficients& coeffs, const SolverOptions& options = {});

// Roots of the bordered Hankel determinant (exact polynomial, real-root
// isolation at working precision).
SpectralEstimate bishop_roots(const MomentTable& table, std::size_t n,
                              const SolverOptions& options = {});

// Real roots of a degree-N polynomial, widening the bracket around
// `bracket.center` by doubling until N roots are inside.
std::vector<BigReal> roots_in_expanding_bracket(std::span<const BigReal> coeffs,
                                                const RootBracket& bracket, std::size_t expected,
                                                int max_doublings);

}  // namespace hankelritz
