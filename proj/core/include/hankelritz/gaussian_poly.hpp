#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hankelritz/big_real.hpp"

namespace hankelritz {

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs()[k]` multiplies x^k. Trailing zeros are stripped on every
/// construction, so the zero polynomial has an empty coefficient list and
/// degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial monomial(std::size_t power, Rational coeff = 1);
  static Polynomial constant(Rational value) { return monomial(0, std::move(value)); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  // Coefficient of x^k (zero beyond the degree).
  Rational coeff(std::size_t k) const;
  // True when every odd-power coefficient is exactly zero.
  bool is_even() const;

  Polynomial derivative() const;

  Rational evaluate(const Rational& x) const;
  BigReal evaluate(const BigReal& x) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& scale);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Multiplies by x^k.
  Polynomial shifted_up(std::size_t k) const;

  std::string to_string() const;

 private:
  void normalize();

  std::vector<Rational> coeffs_;
};

// Width a of the seed Gaussian e^{-a x^2}; always strictly positive.
class GaussianWidth {
 public:
  explicit GaussianWidth(Rational a);
  const Rational& value() const { return a_; }
  friend bool operator==(const GaussianWidth&, const GaussianWidth&) = default;

 private:
  Rational a_;
};

// Multiplicative potential V(x) of H = -d^2/dx^2 + V(x). Only even
// polynomials are accepted; the zero potential is allowed.
class Potential {
 public:
  Potential() = default;
  explicit Potential(Polynomial v);

  // V(x) = coeff * x^power; power must be even.
  static Potential monomial(std::size_t power, Rational coeff = 1);
  // Coefficients of x^0, x^2, x^4, ... in order.
  static Potential from_even_coeffs(const std::vector<Rational>& even_coeffs);

  const Polynomial& polynomial() const { return v_; }
  // V + s, i.e. the Hamiltonian shifted by s times the identity.
  Potential shifted(const Rational& s) const;
  friend bool operator==(const Potential&, const Potential&) = default;

 private:
  Polynomial v_;
};

/// p(x) e^{-a x^2}.
struct GaussianPolyState {
  Polynomial p;
  GaussianWidth a;

  friend bool operator==(const GaussianPolyState&, const GaussianPolyState&) = default;
};

// (H state)(x) with H = -d^2/dx^2 + V: the polynomial part becomes
// -P'' + 4axP' + (2a - 4a^2 x^2)P + VP.
GaussianPolyState apply_hamiltonian(const GaussianPolyState& state, const Potential& pot);

// Ratio of integrals  int x^{2k} e^{-b x^2} dx / int e^{-b x^2} dx
// = (2k-1)!! / (2b)^k. Throws InvalidArgument for b <= 0.
Rational reduced_gaussian_integral(std::size_t half_power, const Rational& b);

// <phi|ket> with the common factor sqrt(pi/(2a)) removed, where phi is the
// seed e^{-a x^2}. Throws InvalidArgument if ket's width differs from the
// bra seed.
Rational inner_product_reduced(const GaussianWidth& bra_seed, const GaussianPolyState& ket);

}  // namespace hankelritz
