#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hankelritz/big_real.hpp"

namespace hankelritz {

/// Dense row-major matrix of BigReal.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigReal& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigReal& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigReal> data_;
};

/// Symmetric n x n matrix; only the lower triangle is stored, so symmetry
/// holds by construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n);

  // Promotes an exact symmetric matrix given by `entry(i, j)` for j <= i.
  template <typename EntryFn>
  static SymMatrix from_rational(std::size_t n, EntryFn entry, long bits = working_precision()) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) m.set(i, j, BigReal(entry(i, j), bits));
    }
    return m;
  }

  std::size_t size() const { return n_; }
  const BigReal& operator()(std::size_t i, std::size_t j) const {
    return i >= j ? lower_[index(i, j)] : lower_[index(j, i)];
  }
  void set(std::size_t i, std::size_t j, BigReal value) {
    (i >= j ? lower_[index(i, j)] : lower_[index(j, i)]) = std::move(value);
  }

  // Leading k x k principal block.
  SymMatrix leading(std::size_t k) const;
  BigReal max_abs() const;

 private:
  static std::size_t index(std::size_t i, std::size_t j) { return i * (i + 1) / 2 + j; }

  std::size_t n_ = 0;
  std::vector<BigReal> lower_;
};

/// Outcome of a rank-revealing factorization.
///
/// `rank` is the numerical rank at working precision. `exact_rank`, when
/// present, is the rank of the exact rational matrix the numbers came from;
/// a gap between the two means precision, not the problem, is deficient.
struct RankReport {
  std::size_t dimension = 0;
  std::size_t rank = 0;
  std::optional<std::size_t> first_deficient_pivot;
  // Pivots in factorization order, each relative to its own diagonal entry
  // (the last one is the deficient pivot when rank < dimension).
  std::vector<BigReal> pivot_magnitudes;
  std::optional<std::size_t> exact_rank;

  bool full_rank() const { return rank == dimension; }
  bool krylov_collapse() const { return exact_rank && *exact_rank < dimension; }
  bool precision_loss() const { return exact_rank && rank < *exact_rank; }
};

struct CholeskyResult {
  Matrix lower;  // dimension x rank
  RankReport report;
};

// 2^-(bits/2), the default relative pivot tolerance.
BigReal default_pivot_tolerance(long bits = working_precision());

// Cholesky factorization S = L L^T without pivoting. Stops at the first
// pivot d_j <= pivot_tol * S_jj and reports rank j. Throws IndefiniteMatrix
// if a pivot is below -pivot_tol * S_jj.
CholeskyResult cholesky(const SymMatrix& s, const BigReal& pivot_tol);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Throws NonConvergence after `max_sweeps` sweeps.
std::vector<BigReal> sym_eigen(const SymMatrix& a, int max_sweeps = 200);

// Solves A x = b by Gaussian elimination with partial pivoting. Throws
// SingularMomentMatrix on an exactly zero pivot.
std::vector<BigReal> lu_solve(Matrix a, std::vector<BigReal> b);

// Rank of an exact rational matrix (row-major rows).
std::size_t exact_rank(std::vector<std::vector<Rational>> rows);

/// Sturm chain of a real polynomial (coefficients ascending by power).
class SturmSequence {
 public:
  explicit SturmSequence(std::span<const BigReal> coeffs);

  // Number of sign changes of the chain at x (zeros skipped).
  int sign_changes(const BigReal& x) const;
  // Distinct real roots in (lo, hi].
  int count_roots(const BigReal& lo, const BigReal& hi) const;
  // Last chain element: gcd(p, p') up to a constant factor.
  const std::vector<BigReal>& gcd() const { return chain_.back(); }
  int degree() const { return static_cast<int>(chain_.front().size()) - 1; }

 private:
  std::vector<std::vector<BigReal>> chain_;
};

// Evaluates sum_k coeffs[k] x^k by Horner's rule.
BigReal evaluate_polynomial(std::span<const BigReal> coeffs, const BigReal& x);

// All real roots in (lo, hi], ascending, repeated by multiplicity. Throws
// IntervalTooSmall if lo >= hi and InvalidArgument for the zero polynomial.
std::vector<BigReal> isolate_real_roots(std::span<const BigReal> coeffs, const BigReal& lo,
                                        const BigReal& hi);

// Coefficients (ascending in W) of the (N+1) x (N+1) bordered determinant
// whose first N rows are (m_i, ..., m_{i+N}) and whose last row is
// (1, W, ..., W^N). Computed exactly by fraction-free elimination.
std::vector<Rational> bordered_det_coefficients(std::span<const Rational> moments, std::size_t n);

// The bordered determinant evaluated at W.
BigReal hankel_bordered_det(std::span<const Rational> moments, const BigReal& w, std::size_t n);

// Determinant of an integer matrix by Bareiss elimination.
Integer bareiss_determinant(std::vector<std::vector<Integer>> rows);

}  // namespace hankelritz
