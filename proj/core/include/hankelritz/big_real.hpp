#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hankelritz {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr long kMinPrecisionBits = 64;
inline constexpr long kDefaultPrecisionBits = 256;

// Precision (bits) given to BigReal values constructed without an explicit
// precision on the current thread.
long working_precision();

// Sets the thread's working precision for the lifetime of the guard.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long previous_;
};

/// Arbitrary-precision binary floating-point value backed by MPFR.
///
/// Every value carries its own precision. Binary arithmetic rounds to the
/// larger of the operand precisions; compound assignment widens the left
/// operand when the right one is more precise. Rounding is to nearest.
class BigReal {
 public:
  BigReal();
  BigReal(long value);                          // NOLINT(google-explicit-constructor)
  BigReal(int value) : BigReal(static_cast<long>(value)) {}  // NOLINT
  explicit BigReal(double value);
  explicit BigReal(const Rational& value, long bits = working_precision());
  explicit BigReal(const Integer& value, long bits = working_precision());

  static BigReal zero(long bits);

  // Parses a decimal (or any base-10 MPFR-accepted) literal. Throws
  // InvalidArgument on malformed text.
  static BigReal parse(std::string_view text, long bits = working_precision());

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

  // Rounds in place to a new precision.
  void set_precision(long bits);

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  // Fixed-point decimal rendering with `significant` significant digits.
  std::string to_fixed(int significant) const;
  // Scientific rendering, e.g. "1.2345e-07".
  std::string to_scientific(int significant) const;

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);

  friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }

  friend bool operator==(const BigReal& a, const BigReal& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

  friend BigReal abs(const BigReal& x);
  friend BigReal sqrt(const BigReal& x);
  friend BigReal exp(const BigReal& x);
  friend BigReal log10(const BigReal& x);
  // x * 2^e, exact.
  friend BigReal ldexp(const BigReal& x, long e);
  friend BigReal pow(const BigReal& x, long n);

  // Raw access for code that needs MPFR functions not wrapped here.
  mpfr_srcptr raw() const { return value_; }
  mpfr_ptr raw() { return value_; }

 private:
  void widen_to(const BigReal& other);

  mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const BigReal& x);

// 2^-bits at the working precision.
BigReal epsilon_bits(long bits);

}  // namespace hankelritz
