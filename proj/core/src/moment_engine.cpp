#include "hankelritz/moment_engine.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "hankelritz/errors.hpp"

namespace hankelritz {

namespace {

// Row of Pascal's triangle, C(n, 0..n).
std::vector<Integer> binomial_row(std::size_t n) {
  std::vector<Integer> row(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    mpz_bin_uiui(row[k].get_mpz_t(), n, k);
  }
  return row;
}

}  // namespace

MomentTable MomentTable::from_reduced(std::vector<Rational> reduced) {
  if (reduced.empty()) throw InvalidArgument("moment list is empty");
  if (sgn(reduced[0]) <= 0) {
    throw InvalidArgument("m_0 must be positive, got " + reduced[0].get_str());
  }
  MomentTable t;
  t.normalized.reserve(reduced.size());
  for (const auto& m : reduced) t.normalized.push_back(Rational(m / reduced[0]));
  t.connected = connected_from_normalized(t.normalized);
  t.reduced = std::move(reduced);
  return t;
}

MomentTable compute_moments(const GaussianWidth& a, const Potential& pot, std::size_t max_index,
                            const MomentOptions& options) {
  if (max_index > options.max_moments) {
    throw MomentLimitExceeded("requested moments up to M = " + std::to_string(max_index) +
                              " but the cap is " + std::to_string(options.max_moments));
  }
  std::vector<Rational> reduced;
  reduced.reserve(max_index + 1);
  GaussianPolyState state{Polynomial::constant(1), a};
  for (std::size_t j = 0; j <= max_index; ++j) {
    reduced.push_back(inner_product_reduced(a, state));
    if (j < max_index) state = apply_hamiltonian(state, pot);
  }
  MomentTable t = MomentTable::from_reduced(std::move(reduced));
  t.width = a;
  t.potential = pot;
  return t;
}

std::vector<Rational> connected_from_normalized(const std::vector<Rational>& normalized) {
  if (normalized.empty() || normalized[0] != 1) {
    throw InvalidArgument("normalized moments must start with nu_0 = 1");
  }
  const std::size_t m = normalized.size() - 1;
  std::vector<Rational> connected;
  connected.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto binom = binomial_row(k);
    Rational value = normalized[k + 1];
    for (std::size_t p = 0; p < k; ++p) {
      value -= Rational(binom[p]) * connected[p] * normalized[k - p];
    }
    connected.push_back(std::move(value));
  }
  return connected;
}

std::vector<Rational> shift_normalized_moments(const std::vector<Rational>& normalized,
                                               const Rational& s) {
  std::vector<Rational> out(normalized.size());
  for (std::size_t j = 0; j < normalized.size(); ++j) {
    const auto binom = binomial_row(j);
    Rational s_power = 1;  // s^{j-i}, walking i downward
    for (std::size_t i = j + 1; i-- > 0;) {
      out[j] += Rational(binom[i]) * s_power * normalized[i];
      s_power *= s;
    }
  }
  return out;
}

void write_moment_table(std::ostream& os, const MomentTable& table) {
  for (std::size_t j = 0; j < table.reduced.size(); ++j) {
    const Rational& m = table.reduced[j];
    os << j << '\t' << m.get_num().get_str() << '/' << m.get_den().get_str() << '\n';
  }
}

std::vector<Rational> read_reduced_moments(std::istream& is) {
  std::vector<Rational> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw InvalidArgument("moment line without TAB: " + line);
    const std::size_t index = std::stoul(line.substr(0, tab));
    if (index != out.size()) {
      throw InvalidArgument("moment lines out of order at j = " + std::to_string(index));
    }
    Rational value;
    if (value.set_str(line.substr(tab + 1), 10) != 0 || sgn(value.get_den()) == 0) {
      throw InvalidArgument("malformed rational: " + line.substr(tab + 1));
    }
    value.canonicalize();
    out.push_back(std::move(value));
  }
  return out;
}

}  // namespace hankelritz
