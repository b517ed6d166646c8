#include "hankelritz/cmx_lt.hpp"

#include <string>
#include <utility>
#include <vector>

#include "hankelritz/errors.hpp"
#include "hankelritz/xprec_linalg.hpp"

namespace hankelritz {

namespace {

// I_k with 1-based k.
const Rational& connected_at(const MomentTable& table, std::size_t k) {
  return table.connected[k - 1];
}

}  // namespace

std::size_t connected_matrix_rank(const MomentTable& table, std::size_t n) {
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) rows[i - 1][j - 1] = connected_at(table, i + j + 1);
  }
  return exact_rank(std::move(rows));
}

SpectralEstimate cmx_lt_estimate(const MomentTable& table, std::size_t n,
                                 const SolverOptions& options) {
  if (table.connected.size() < 2 * n + 1) {
    throw InsufficientMoments("CMX-LT order " + std::to_string(n) + " needs I_1..I_" +
                              std::to_string(2 * n + 1));
  }
  const PrecisionScope scope(options.precision_bits);
  SpectralEstimate est;
  est.method = Method::kCmxLt;
  est.order = n;
  est.moments_used = cmx_lt_moments_used(n);

  if (n == 0) {
    est.exact_value = connected_at(table, 1);
    est.values.emplace_back(*est.exact_value, options.precision_bits);
    return est;
  }

  const std::size_t rank = connected_matrix_rank(table, n);
  if (rank < n) {
    throw SingularConnectedMatrix("CMX-LT connected-moment matrix of order " +
                                  std::to_string(n) + " has exact rank " + std::to_string(rank));
  }
  Matrix a(n, n);
  std::vector<BigReal> b(n);
  for (std::size_t i = 1; i <= n; ++i) {
    b[i - 1] = BigReal(connected_at(table, i + 1), options.precision_bits);
    for (std::size_t j = 1; j <= n; ++j) {
      a(i - 1, j - 1) = BigReal(connected_at(table, i + j + 1), options.precision_bits);
    }
  }
  const std::vector<BigReal> x = lu_solve(std::move(a), b);
  BigReal correction = 0;
  for (std::size_t i = 0; i < n; ++i) correction += b[i] * x[i];
  est.values.push_back(BigReal(connected_at(table, 1), options.precision_bits) - correction);
  return est;
}

}  // namespace hankelritz
