#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hankelritz/big_real.hpp"
#include "hankelritz/gaussian_poly.hpp"

namespace hankelritz {

inline constexpr std::size_t kDefaultMaxMoments = 64;

/// Exact moment sequence of a seed state.
///
/// `reduced[j]` is <phi|H^j|phi> with the Gaussian normalization removed,
/// `normalized[j] = reduced[j] / reduced[0]`, and `connected[k-1]` is the
/// connected moment I_k for k = 1..M.
struct MomentTable {
  std::vector<Rational> reduced;
  std::vector<Rational> normalized;
  std::vector<Rational> connected;

  // Problem that produced the table; absent for tables built from raw
  // moment lists.
  std::optional<GaussianWidth> width;
  std::optional<Potential> potential;

  // Highest moment index M (the table holds M + 1 moments).
  std::size_t max_index() const { return reduced.empty() ? 0 : reduced.size() - 1; }

  // Builds a table from m_0..m_M. Throws InvalidArgument if the list is
  // empty or m_0 <= 0.
  static MomentTable from_reduced(std::vector<Rational> reduced);
};

struct MomentOptions {
  std::size_t max_moments = kDefaultMaxMoments;
};

// Moments m_0..m_M of the seed e^{-a x^2} under H = -d^2/dx^2 + V, built by
// repeated exact application of H. Throws MomentLimitExceeded if M is above
// the configured cap.
MomentTable compute_moments(const GaussianWidth& a, const Potential& pot, std::size_t max_index,
                            const MomentOptions& options = {});

// I_{k+1} = nu_{k+1} - sum_{p<k} C(k,p) I_{p+1} nu_{k-p}. Returns I_1..I_M.
// Throws InvalidArgument unless normalized[0] == 1.
std::vector<Rational> connected_from_normalized(const std::vector<Rational>& normalized);

// Normalized moments of H + s: nu'_j = sum_i C(j,i) s^{j-i} nu_i.
std::vector<Rational> shift_normalized_moments(const std::vector<Rational>& normalized,
                                               const Rational& s);

// Text format: one line "j<TAB>numerator/denominator" per reduced moment.
void write_moment_table(std::ostream& os, const MomentTable& table);
std::vector<Rational> read_reduced_moments(std::istream& is);

}  // namespace hankelritz
