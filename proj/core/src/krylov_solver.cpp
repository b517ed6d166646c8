#include "hankelritz/krylov_solver.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "hankelritz/errors.hpp"

namespace hankelritz {

namespace {

std::vector<std::vector<Rational>> hankel_rows(const std::vector<Rational>& nu, std::size_t n,
                                               std::size_t offset) {
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = nu[i + j + offset];
  }
  return rows;
}

void require_moments(const MomentTable& table, std::size_t n) {
  if (n == 0) throw InvalidArgument("order N must be at least 1");
  if (table.normalized.size() < 2 * n) {
    throw InsufficientMoments("order " + std::to_string(n) + " needs moments through index " +
                              std::to_string(2 * n - 1) + ", table stops at " +
                              std::to_string(table.max_index()));
  }
}

BigReal pivot_tolerance(const SolverOptions& options) {
  return options.pivot_tolerance ? *options.pivot_tolerance
                                 : default_pivot_tolerance(options.precision_bits);
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kRrvm:
      return "RRVM";
    case Method::kCmpa:
      return "CMPA";
    case Method::kBishop:
      return "BISHOP";
    case Method::kCmxLt:
      return "CMX_LT";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string upper(name);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "CMX-LT") upper = "CMX_LT";
  for (Method m : {Method::kRrvm, Method::kCmpa, Method::kBishop, Method::kCmxLt}) {
    if (upper == method_name(m)) return m;
  }
  return std::nullopt;
}

HankelPencil build_pencil(const MomentTable& table, std::size_t n, const SolverOptions& options) {
  require_moments(table, n);
  const auto& nu = table.normalized;
  HankelPencil pencil;
  pencil.order = n;
  pencil.source = &table;
  pencil.s = SymMatrix::from_rational(
      n, [&](std::size_t i, std::size_t j) { return nu[i + j]; }, options.precision_bits);
  pencil.h = SymMatrix::from_rational(
      n, [&](std::size_t i, std::size_t j) { return nu[i + j + 1]; }, options.precision_bits);
  return pencil;
}

SpectralEstimate rrvm_eigenvalues(const HankelPencil& pencil, const SolverOptions& options) {
  const PrecisionScope scope(options.precision_bits);
  const std::size_t n = pencil.order;
  CholeskyResult chol = cholesky(pencil.s, pivot_tolerance(options));
  if (pencil.source != nullptr) {
    chol.report.exact_rank = exact_rank(hankel_rows(pencil.source->normalized, n, 0));
  }

  SpectralEstimate est;
  est.method = Method::kRrvm;
  est.order = n;
  est.moments_used = 2 * n;
  est.krylov_collapse = !chol.report.full_rank();

  const std::size_t r = chol.report.rank;
  if (r == 0) {
    est.rank_report = std::move(chol.report);
    return est;
  }
  const Matrix& l = chol.lower;

  // C = L^-1 H L^-T on the leading r x r block: first X = L^-1 H, then
  // C = L^-1 X^T (H symmetric).
  Matrix x(r, r);
  for (std::size_t col = 0; col < r; ++col) {
    for (std::size_t i = 0; i < r; ++i) {
      BigReal acc = pencil.h(i, col);
      for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * x(k, col);
      x(i, col) = acc / l(i, i);
    }
  }
  SymMatrix c(r);
  for (std::size_t col = 0; col < r; ++col) {
    std::vector<BigReal> y(r);
    for (std::size_t i = 0; i < r; ++i) {
      BigReal acc = x(col, i);
      for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * y[k];
      y[i] = acc / l(i, i);
    }
    for (std::size_t i = col; i < r; ++i) c.set(i, col, y[i]);
  }
  est.values = sym_eigen(c);

  if (r == 1 && pencil.source != nullptr) {
    est.exact_value = pencil.source->normalized[1];
    est.values.front() = BigReal(*est.exact_value, options.precision_bits);
  }
  est.rank_report = std::move(chol.report);
  return est;
}

RootBracket default_root_bracket(const MomentTable& table, std::size_t n, long bits) {
  const PrecisionScope scope(bits);
  RootBracket b;
  b.center = BigReal(table.normalized.size() > 1 ? table.normalized[1] : Rational(0), bits);
  const Rational variance = table.connected.size() > 1 ? table.connected[1] : Rational(0);
  b.half_width = 4 * sqrt(BigReal(variance, bits)) * BigReal(static_cast<long>(n));
  if (b.half_width.is_zero()) b.half_width = std::max(BigReal(1), abs(b.center));
  return b;
}

std::vector<BigReal> roots_in_expanding_bracket(std::span<const BigReal> coeffs,
                                                const RootBracket& bracket, std::size_t expected,
                                                int max_doublings) {
  const SturmSequence sturm(coeffs);
  BigReal half = bracket.half_width;
  for (int attempt = 0; attempt <= max_doublings; ++attempt) {
    const BigReal lo = bracket.center - half;
    const BigReal hi = bracket.center + half;
    if (static_cast<std::size_t>(sturm.count_roots(lo, hi)) >= expected) {
      auto roots = isolate_real_roots(coeffs, lo, hi);
      if (roots.size() >= expected) return roots;
    }
    half = 2 * half;
  }
  throw RootCountMismatch("found fewer than " + std::to_string(expected) +
                          " real roots after " + std::to_string(max_doublings) +
                          " bracket doublings");
}

CmpaCoefficients cmpa_coefficients(const MomentTable& table, std::size_t n,
                                   const SolverOptions& options) {
  require_moments(table, n);
  const PrecisionScope scope(options.precision_bits);
  const auto& nu = table.normalized;

  // Matrix entries nu_{i+j} for i = 0..N-1, j = 1..N, i.e. the H block.
  const std::size_t rank = exact_rank(hankel_rows(nu, n, 1));
  if (rank < n) {
    throw SingularMomentMatrix("CMPA moment matrix of order " + std::to_string(n) +
                               " has exact rank " + std::to_string(rank));
  }
  Matrix a(n, n);
  std::vector<BigReal> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = BigReal(nu[i + j + 1], options.precision_bits);
    rhs[i] = -BigReal(nu[i], options.precision_bits);
  }
  std::vector<BigReal> solution = lu_solve(std::move(a), std::move(rhs));

  CmpaCoefficients out;
  out.p.reserve(n + 1);
  out.p.emplace_back(1L);
  for (auto& v : solution) out.p.push_back(std::move(v));
  out.bracket = default_root_bracket(table, n, options.precision_bits);
  out.moments_used = 2 * n;
  return out;
}

SpectralEstimate cmpa_roots(const CmpaCoefficients& coeffs, const SolverOptions& options) {
  const PrecisionScope scope(options.precision_bits);
  const std::size_t n = coeffs.p.size() - 1;
  SpectralEstimate est;
  est.method = Method::kCmpa;
  est.order = n;
  est.moments_used = coeffs.moments_used;
  est.values = roots_in_expanding_bracket(coeffs.p, coeffs.bracket, n,
                                          options.max_bracket_doublings);
  return est;
}

SpectralEstimate bishop_roots(const MomentTable& table, std::size_t n,
                              const SolverOptions& options) {
  require_moments(table, n);
  const PrecisionScope scope(options.precision_bits);
  const auto exact = bordered_det_coefficients(table.normalized, n);
  if (sgn(exact.back()) == 0) {
    throw RootCountMismatch("bordered determinant of order " + std::to_string(n) +
                            " has degree below " + std::to_string(n) +
                            " (singular Hankel block)");
  }
  std::vector<BigReal> coeffs;
  coeffs.reserve(exact.size());
  for (const auto& c : exact) coeffs.emplace_back(c, options.precision_bits);

  SpectralEstimate est;
  est.method = Method::kBishop;
  est.order = n;
  est.moments_used = 2 * n;
  est.values = roots_in_expanding_bracket(coeffs, default_root_bracket(table, n, options.precision_bits),
                                          n, options.max_bracket_doublings);
  if (n == 1) {
    est.exact_value = Rational(-exact[0] / exact[1]);
  }
  return est;
}

}  // namespace hankelritz
