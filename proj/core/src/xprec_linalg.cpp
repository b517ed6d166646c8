#include "hankelritz/xprec_linalg.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "hankelritz/errors.hpp"

namespace hankelritz {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

SymMatrix::SymMatrix(std::size_t n) : n_(n), lower_(n * (n + 1) / 2) {}

SymMatrix SymMatrix::leading(std::size_t k) const {
  SymMatrix out(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, (*this)(i, j));
  }
  return out;
}

BigReal SymMatrix::max_abs() const {
  BigReal out = 0;
  for (const auto& v : lower_) out = std::max(out, abs(v));
  return out;
}

BigReal default_pivot_tolerance(long bits) { return epsilon_bits(bits / 2); }

CholeskyResult cholesky(const SymMatrix& s, const BigReal& pivot_tol) {
  if (pivot_tol.sign() < 0) throw InvalidArgument("pivot tolerance must be non-negative");
  const std::size_t n = s.size();
  Matrix l(n, n);
  RankReport report;
  report.dimension = n;

  BigReal max_diag = 0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, s(i, i));

  std::size_t rank = 0;
  for (std::size_t j = 0; j < n; ++j) {
    BigReal pivot = s(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    const BigReal scale = s(j, j).sign() > 0 ? s(j, j) : max_diag;
    const BigReal relative = scale.sign() > 0 ? pivot / scale : pivot;
    report.pivot_magnitudes.push_back(relative);
    if (relative < -pivot_tol) {
      throw IndefiniteMatrix("negative pivot " + relative.to_scientific(6) + " at index " +
                             std::to_string(j));
    }
    if (relative <= pivot_tol) {
      report.first_deficient_pivot = j;
      break;
    }
    l(j, j) = sqrt(pivot);
    for (std::size_t i = j + 1; i < n; ++i) {
      BigReal acc = s(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      l(i, j) = acc / l(j, j);
    }
    rank = j + 1;
  }
  report.rank = rank;

  Matrix trimmed(n, rank);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rank && j <= i; ++j) trimmed(i, j) = l(i, j);
  }
  return {std::move(trimmed), std::move(report)};
}

std::vector<BigReal> sym_eigen(const SymMatrix& a, int max_sweeps) {
  const std::size_t n = a.size();
  Matrix m(n, n);
  BigReal norm2 = 0;
  long bits = kMinPrecisionBits;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      norm2 += m(i, j) * m(i, j);
      bits = std::max(bits, m(i, j).precision());
    }
  }
  const BigReal threshold = sqrt(norm2) * epsilon_bits(bits - 8);

  auto off_diagonal_converged = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (abs(m(i, j)) >= threshold) return false;
      }
    }
    return true;
  };

  int sweep = 0;
  while (!off_diagonal_converged()) {
    if (++sweep > max_sweeps) {
      throw NonConvergence("Jacobi iteration did not converge in " + std::to_string(max_sweeps) +
                           " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (m(p, q).is_zero()) continue;
        // Rotation angle chosen so that the (p, q) entry vanishes; t is the
        // smaller root of t^2 + 2 theta t - 1 = 0.
        const BigReal theta = (m(q, q) - m(p, p)) / (2 * m(p, q));
        BigReal t = 1 / (abs(theta) + sqrt(theta * theta + 1));
        if (theta.sign() < 0) t = -t;
        const BigReal c = 1 / sqrt(t * t + 1);
        const BigReal s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const BigReal mkp = m(k, p);
          const BigReal mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const BigReal mpk = m(p, k);
          const BigReal mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        m(p, q) = 0;
        m(q, p) = 0;
      }
    }
  }

  std::vector<BigReal> eig;
  eig.reserve(n);
  for (std::size_t i = 0; i < n; ++i) eig.push_back(m(i, i));
  std::sort(eig.begin(), eig.end(), [](const BigReal& x, const BigReal& y) { return x < y; });
  return eig;
}

std::vector<BigReal> lu_solve(Matrix a, std::vector<BigReal> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw InvalidArgument("lu_solve: dimension mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (abs(a(r, c)) > abs(a(best, c))) best = r;
    }
    if (a(best, c).is_zero()) {
      throw SingularMomentMatrix("zero pivot in column " + std::to_string(c));
    }
    if (best != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(best, k), a(c, k));
      std::swap(b[best], b[c]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const BigReal f = a(r, c) / a(c, c);
      if (f.is_zero()) continue;
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      b[r] -= f * b[c];
    }
  }
  std::vector<BigReal> x(n);
  for (std::size_t i = n; i-- > 0;) {
    BigReal acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a(i, k) * x[k];
    x[i] = acc / a(i, i);
  }
  return x;
}

std::size_t exact_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Sturm sequences and root isolation

namespace {

using Coeffs = std::vector<BigReal>;

BigReal max_abs(const Coeffs& p) {
  BigReal out = 0;
  for (const auto& c : p) out = std::max(out, abs(c));
  return out;
}

long max_precision(std::span<const BigReal> p) {
  long bits = kMinPrecisionBits;
  for (const auto& c : p) bits = std::max(bits, c.precision());
  return bits;
}

void trim_leading(Coeffs& p, const BigReal& tol) {
  while (!p.empty() && abs(p.back()) <= tol) p.pop_back();
}

// Rescales by a positive factor so the largest coefficient has magnitude 1;
// Sturm signs are unaffected.
void unit_scale(Coeffs& p) {
  const BigReal m = max_abs(p);
  if (m.sign() > 0) {
    for (auto& c : p) c /= m;
  }
}

Coeffs derivative(const Coeffs& p) {
  Coeffs d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * BigReal(static_cast<long>(k)));
  return d;
}

// Remainder of num / den, with coefficients below `noise` relative to the
// working scale of the division flushed to zero.
Coeffs remainder(Coeffs num, const Coeffs& den, long bits) {
  const std::size_t dn = den.size() - 1;
  BigReal quotient_scale = 0;
  while (num.size() > dn) {
    const BigReal q = num.back() / den.back();
    quotient_scale = std::max(quotient_scale, abs(q));
    const std::size_t shift = num.size() - 1 - dn;
    for (std::size_t k = 0; k <= dn; ++k) num[shift + k] -= q * den[k];
    num.pop_back();
  }
  const BigReal scale = std::max(BigReal(1), quotient_scale) * max_abs(den);
  const BigReal noise = scale * epsilon_bits(bits - bits / 8);
  for (auto& c : num) {
    if (abs(c) <= noise) c = 0;
  }
  trim_leading(num, BigReal(0));
  return num;
}

int sign_of(const BigReal& x) { return x.sign() > 0 ? 1 : (x.sign() < 0 ? -1 : 0); }

}  // namespace

BigReal evaluate_polynomial(std::span<const BigReal> coeffs, const BigReal& x) {
  BigReal acc = BigReal::zero(std::max(x.precision(), max_precision(coeffs)));
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

SturmSequence::SturmSequence(std::span<const BigReal> coeffs) {
  const long bits = max_precision(coeffs);
  Coeffs p(coeffs.begin(), coeffs.end());
  trim_leading(p, BigReal(0));
  if (p.empty()) throw InvalidArgument("Sturm sequence of the zero polynomial");
  unit_scale(p);
  chain_.push_back(p);
  if (p.size() == 1) return;
  Coeffs d = derivative(p);
  unit_scale(d);
  chain_.push_back(std::move(d));
  while (chain_.back().size() > 1) {
    Coeffs r = remainder(chain_[chain_.size() - 2], chain_.back(), bits);
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    unit_scale(r);
    chain_.push_back(std::move(r));
  }
}

int SturmSequence::sign_changes(const BigReal& x) const {
  int changes = 0;
  int previous = 0;
  for (const auto& p : chain_) {
    const int s = sign_of(evaluate_polynomial(p, x));
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++changes;
    previous = s;
  }
  return changes;
}

int SturmSequence::count_roots(const BigReal& lo, const BigReal& hi) const {
  return sign_changes(lo) - sign_changes(hi);
}

namespace {

bool narrow_enough(const BigReal& lo, const BigReal& hi, long bits) {
  const BigReal mid_scale = std::max(BigReal(1), std::max(abs(lo), abs(hi)));
  return hi - lo <= mid_scale * epsilon_bits(bits - 8);
}

void isolate_distinct(const SturmSequence& sturm, BigReal lo, BigReal hi, int lo_changes,
                      int hi_changes, long bits, std::vector<BigReal>& out) {
  int count = lo_changes - hi_changes;
  if (count <= 0) return;
  if (count == 1) {
    // Shrink while keeping the root inside (lo, hi].
    while (!narrow_enough(lo, hi, bits)) {
      BigReal mid = ldexp(lo + hi, -1);
      const int mid_changes = sturm.sign_changes(mid);
      if (lo_changes - mid_changes >= 1) {
        hi = std::move(mid);
      } else {
        lo = std::move(mid);
        lo_changes = mid_changes;
      }
    }
    out.push_back(ldexp(lo + hi, -1));
    return;
  }
  BigReal mid = ldexp(lo + hi, -1);
  if (narrow_enough(lo, hi, bits)) {
    // Cluster that cannot be separated at this precision.
    for (int i = 0; i < count; ++i) out.push_back(mid);
    return;
  }
  const int mid_changes = sturm.sign_changes(mid);
  isolate_distinct(sturm, lo, mid, lo_changes, mid_changes, bits, out);
  isolate_distinct(sturm, mid, hi, mid_changes, hi_changes, bits, out);
}

}  // namespace

std::vector<BigReal> isolate_real_roots(std::span<const BigReal> coeffs, const BigReal& lo,
                                        const BigReal& hi) {
  if (!(lo < hi)) throw IntervalTooSmall("root interval requires lo < hi");
  const long bits = max_precision(coeffs);
  const SturmSequence sturm(coeffs);
  std::vector<BigReal> roots;
  if (sturm.degree() < 1) return roots;
  if (sturm.degree() == 1) {
    std::size_t top = coeffs.size() - 1;
    while (coeffs[top].is_zero()) --top;
    BigReal root = -coeffs[0] / coeffs[top];
    if (lo < root && root <= hi) roots.push_back(std::move(root));
    return roots;
  }
  isolate_distinct(sturm, lo, hi, sturm.sign_changes(lo), sturm.sign_changes(hi), bits, roots);

  // Roots of gcd(p, p') carry the extra multiplicity of repeated roots.
  const auto& g = sturm.gcd();
  if (g.size() > 1 && !roots.empty()) {
    const std::vector<BigReal> repeated = isolate_real_roots(g, lo, hi);
    std::vector<BigReal> extra;
    for (const auto& r : repeated) {
      auto nearest = std::min_element(roots.begin(), roots.end(),
                                      [&](const BigReal& a, const BigReal& b) {
                                        return abs(a - r) < abs(b - r);
                                      });
      extra.push_back(*nearest);
    }
    roots.insert(roots.end(), extra.begin(), extra.end());
    std::sort(roots.begin(), roots.end(), [](const BigReal& a, const BigReal& b) { return a < b; });
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Exact determinants

Integer bareiss_determinant(std::vector<std::vector<Integer>> rows) {
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  int sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(rows[k][k]) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && sgn(rows[swap_with][k]) == 0) ++swap_with;
      if (swap_with == n) return 0;
      std::swap(rows[k], rows[swap_with]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
        rows[i][j] = std::move(v);
      }
    }
    previous = rows[k][k];
  }
  Integer det = rows[n - 1][n - 1];
  return sign > 0 ? det : Integer(-det);
}

std::vector<Rational> bordered_det_coefficients(std::span<const Rational> moments, std::size_t n) {
  if (n == 0) throw InvalidArgument("bordered determinant order must be at least 1");
  if (moments.size() < 2 * n) {
    throw InsufficientMoments("bordered determinant of order " + std::to_string(n) +
                              " needs moments through index " + std::to_string(2 * n - 1));
  }
  // Clear denominators so the elimination runs over the integers.
  Integer common = 1;
  for (std::size_t j = 0; j < 2 * n; ++j) {
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), moments[j].get_den_mpz_t());
  }
  std::vector<Integer> scaled(2 * n);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    scaled[j] = moments[j].get_num() * (common / moments[j].get_den());
  }
  Integer common_power;
  mpz_pow_ui(common_power.get_mpz_t(), common.get_mpz_t(), n);

  // Expansion along the last row: the coefficient of W^k is the cofactor
  // (-1)^{n+k} times the minor with column k removed.
  std::vector<Rational> coeffs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::vector<Integer>> minor(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0, col = 0; c <= n; ++c) {
        if (c == k) continue;
        minor[i][col++] = scaled[i + c];
      }
    }
    Integer det = bareiss_determinant(std::move(minor));
    if ((n + k) % 2 == 1) det = -det;
    coeffs[k] = Rational(det, common_power);
    coeffs[k].canonicalize();
  }
  return coeffs;
}

BigReal hankel_bordered_det(std::span<const Rational> moments, const BigReal& w, std::size_t n) {
  const auto coeffs = bordered_det_coefficients(moments, n);
  BigReal acc = BigReal::zero(w.precision());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * w + BigReal(*it, w.precision());
  }
  return acc;
}

}  // namespace hankelritz
