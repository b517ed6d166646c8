#include "hankelritz/big_real.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "hankelritz/errors.hpp"

namespace hankelritz {

namespace {

thread_local long g_working_precision = kDefaultPrecisionBits;

mpfr_prec_t checked_precision(long bits) {
  if (bits < kMinPrecisionBits) {
    throw InvalidArgument("precision must be at least " +
                          std::to_string(kMinPrecisionBits) + " bits, got " +
                          std::to_string(bits));
  }
  return static_cast<mpfr_prec_t>(bits);
}

}  // namespace

long working_precision() { return g_working_precision; }

PrecisionScope::PrecisionScope(long bits) : previous_(g_working_precision) {
  checked_precision(bits);
  g_working_precision = bits;
}

PrecisionScope::~PrecisionScope() { g_working_precision = previous_; }

BigReal::BigReal() {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_zero(value_, 1);
}

BigReal BigReal::zero(long bits) {
  BigReal out;
  out.set_precision(bits);
  mpfr_set_zero(out.value_, 1);
  return out;
}

BigReal::BigReal(long value) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigReal::BigReal(double value) {
  mpfr_init2(value_, std::max<long>(g_working_precision, 53));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigReal::BigReal(const Rational& value, long bits) {
  mpfr_init2(value_, checked_precision(bits));
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigReal::BigReal(const Integer& value, long bits) {
  mpfr_init2(value_, checked_precision(bits));
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view text, long bits) {
  BigReal out = zero(bits);
  const std::string copy(text);
  char* end = nullptr;
  mpfr_strtofr(out.value_, copy.c_str(), &end, 10, MPFR_RNDN);
  if (copy.empty() || end == copy.c_str() || *end != '\0') {
    throw InvalidArgument("not a decimal number: '" + copy + "'");
  }
  return out;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

void BigReal::set_precision(long bits) {
  mpfr_prec_round(value_, checked_precision(bits), MPFR_RNDN);
}

void BigReal::widen_to(const BigReal& other) {
  if (mpfr_get_prec(other.value_) > mpfr_get_prec(value_)) {
    mpfr_prec_round(value_, mpfr_get_prec(other.value_), MPFR_RNDN);
  }
}

std::string BigReal::to_fixed(int significant) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  mpfr_exp_t exponent = 0;
  char* raw_digits = mpfr_get_str(nullptr, &exponent, 10,
                                  static_cast<size_t>(significant), value_,
                                  MPFR_RNDN);
  std::string digits(raw_digits);
  mpfr_free_str(raw_digits);

  std::string sign_text;
  if (!digits.empty() && digits.front() == '-') {
    sign_text = "-";
    digits.erase(0, 1);
  }
  if (is_zero()) {
    sign_text.clear();
    exponent = 1;
  }
  const long n = static_cast<long>(digits.size());
  std::string out;
  if (exponent <= 0) {
    out = "0." + std::string(static_cast<size_t>(-exponent), '0') + digits;
  } else if (exponent >= n) {
    out = digits + std::string(static_cast<size_t>(exponent - n), '0');
  } else {
    out = digits.substr(0, static_cast<size_t>(exponent)) + "." +
          digits.substr(static_cast<size_t>(exponent));
  }
  return sign_text + out;
}

std::string BigReal::to_scientific(int significant) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Re", std::max(significant - 1, 0), value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

BigReal BigReal::operator-() const {
  BigReal out(*this);
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  widen_to(rhs);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  widen_to(rhs);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  widen_to(rhs);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  widen_to(rhs);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigReal abs(const BigReal& x) {
  BigReal out(x);
  mpfr_abs(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigReal sqrt(const BigReal& x) {
  BigReal out(x);
  mpfr_sqrt(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigReal exp(const BigReal& x) {
  BigReal out(x);
  mpfr_exp(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigReal log10(const BigReal& x) {
  BigReal out(x);
  mpfr_log10(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal out(x);
  mpfr_mul_2si(out.value_, x.value_, e, MPFR_RNDN);
  return out;
}

BigReal pow(const BigReal& x, long n) {
  BigReal out(x);
  mpfr_pow_si(out.value_, x.value_, n, MPFR_RNDN);
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) {
  return os << x.to_scientific(40);
}

BigReal epsilon_bits(long bits) { return ldexp(BigReal(1L), -bits); }

}  // namespace hankelritz
