#include "hankelritz/gaussian_poly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "hankelritz/errors.hpp"

namespace hankelritz {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

Polynomial Polynomial::monomial(std::size_t power, Rational coeff) {
  std::vector<Rational> c(power + 1);
  c[power] = std::move(coeff);
  return Polynomial(std::move(c));
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

bool Polynomial::is_even() const {
  for (std::size_t k = 1; k < coeffs_.size(); k += 2) {
    if (sgn(coeffs_[k]) != 0) return false;
  }
  return true;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  }
  return Polynomial(std::move(d));
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

BigReal Polynomial::evaluate(const BigReal& x) const {
  BigReal acc = BigReal::zero(x.precision());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + BigReal(*it, x.precision());
  }
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scale) {
  for (auto& c : coeffs_) c *= scale;
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted_up(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<Rational> out(coeffs_.size() + k);
  std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
  return Polynomial(std::move(out));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[k].get_str();
    if (k > 0) os << "*x^" << k;
    first = false;
  }
  return os.str();
}

GaussianWidth::GaussianWidth(Rational a) : a_(std::move(a)) {
  a_.canonicalize();
  if (sgn(a_) <= 0) {
    throw InvalidArgument("Gaussian width must be positive, got " + a_.get_str());
  }
}

Potential::Potential(Polynomial v) : v_(std::move(v)) {
  if (!v_.is_even()) {
    throw InvalidArgument("potential must be an even polynomial, got " + v_.to_string());
  }
}

Potential Potential::monomial(std::size_t power, Rational coeff) {
  return Potential(Polynomial::monomial(power, std::move(coeff)));
}

Potential Potential::from_even_coeffs(const std::vector<Rational>& even_coeffs) {
  std::vector<Rational> c(even_coeffs.empty() ? 0 : 2 * even_coeffs.size() - 1);
  for (std::size_t i = 0; i < even_coeffs.size(); ++i) c[2 * i] = even_coeffs[i];
  return Potential(Polynomial(std::move(c)));
}

Potential Potential::shifted(const Rational& s) const {
  return Potential(v_ + Polynomial::constant(s));
}

GaussianPolyState apply_hamiltonian(const GaussianPolyState& state, const Potential& pot) {
  const Rational& a = state.a.value();
  const Polynomial& p = state.p;

  // Collect into a dense buffer; the result degree is at most
  // deg P + max(2, deg V).
  const std::size_t n = p.coeffs().size();
  const std::size_t vn = pot.polynomial().coeffs().size();
  std::vector<Rational> out(n == 0 ? 0 : std::max(n + 2, n + vn));
  for (std::size_t k = 0; k < n; ++k) {
    const Rational& c = p.coeffs()[k];
    if (sgn(c) == 0) continue;
    if (k >= 2) out[k - 2] -= c * static_cast<unsigned long>(k * (k - 1));
    // 4a x P' contributes 4ak c x^k; the 2a P term adds 2a c x^k.
    out[k] += (4 * static_cast<unsigned long>(k) + 2) * a * c;
    out[k + 2] -= 4 * a * a * c;
    for (std::size_t j = 0; j < vn; ++j) {
      const Rational& v = pot.polynomial().coeffs()[j];
      if (sgn(v) != 0) out[k + j] += c * v;
    }
  }
  return GaussianPolyState{Polynomial(std::move(out)), state.a};
}

Rational reduced_gaussian_integral(std::size_t half_power, const Rational& b) {
  if (sgn(b) <= 0) {
    throw InvalidArgument("Gaussian exponent b must be positive, got " + b.get_str());
  }
  Rational out = 1;
  const Rational two_b = 2 * b;
  for (std::size_t i = 1; i <= half_power; ++i) {
    out *= Rational(static_cast<unsigned long>(2 * i - 1)) / two_b;
  }
  return out;
}

Rational inner_product_reduced(const GaussianWidth& bra_seed, const GaussianPolyState& ket) {
  if (!(ket.a == bra_seed)) {
    throw InvalidArgument("ket width " + ket.a.value().get_str() +
                          " differs from seed width " + bra_seed.value().get_str());
  }
  // Product of two Gaussians e^{-a x^2} has exponent b = 2a. Odd powers
  // integrate to zero.
  const Rational b = 2 * bra_seed.value();
  const Rational two_b = 2 * b;
  Rational out = 0;
  Rational kernel = 1;  // reduced_gaussian_integral(k, b), built incrementally
  const auto& c = ket.p.coeffs();
  for (std::size_t k = 0; 2 * k < c.size(); ++k) {
    if (k > 0) kernel *= Rational(static_cast<unsigned long>(2 * k - 1)) / two_b;
    if (sgn(c[2 * k]) != 0) out += c[2 * k] * kernel;
  }
  return out;
}

}  // namespace hankelritz
