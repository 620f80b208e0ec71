#pragma once

#include <stdexcept>
#include <string>

#include <mpfr.h>

#include "mills/big.hpp"

namespace mills {

// Precision in bits.
using Precision = long;

inline constexpr Precision kMinPrecision = 64;
inline constexpr Precision kDefaultPrecision = 128;

// A denominator or leading coefficient could not be separated from zero at
// the working precision.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary floating-point number with an explicit precision, backed by MPFR.
// All arithmetic rounds to nearest; a binary operation produces a result at
// the larger of its operands' precisions, correctly rounded.
class PrecReal {
 public:
  explicit PrecReal(Precision precision = kDefaultPrecision);
  PrecReal(long value, Precision precision);
  PrecReal(const BigInt& value, Precision precision);
  PrecReal(const BigRational& value, Precision precision);
  static PrecReal from_double(double value, Precision precision);
  // 2^exponent, exact.
  static PrecReal power_of_two(long exponent, Precision precision = kMinPrecision);
  static PrecReal pi(Precision precision);

  PrecReal(const PrecReal& other);
  PrecReal(PrecReal&& other) noexcept;
  PrecReal& operator=(const PrecReal& other);
  PrecReal& operator=(PrecReal&& other) noexcept;
  ~PrecReal();

  Precision precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Every finite binary float is a dyadic rational; the conversion is exact.
  BigRational to_rational() const;
  // The E with 2^(E-1) <= |x| < 2^E. Undefined for zero.
  long exponent() const { return mpfr_get_exp(value_); }

  // Round-to-nearest decimal with the given number of significant digits.
  // Positional notation for moderate magnitudes, scientific otherwise;
  // trailing zeros are dropped.
  std::string to_decimal(int significant_digits = 20) const;

  PrecReal rounded(Precision precision) const;

  PrecReal operator-() const;
  friend PrecReal operator+(const PrecReal& a, const PrecReal& b);
  friend PrecReal operator-(const PrecReal& a, const PrecReal& b);
  friend PrecReal operator*(const PrecReal& a, const PrecReal& b);
  friend PrecReal operator/(const PrecReal& a, const PrecReal& b);
  PrecReal& operator+=(const PrecReal& b) { return *this = *this + b; }
  PrecReal& operator-=(const PrecReal& b) { return *this = *this - b; }
  PrecReal& operator*=(const PrecReal& b) { return *this = *this * b; }
  PrecReal& operator/=(const PrecReal& b) { return *this = *this / b; }

  friend bool operator==(const PrecReal& a, const PrecReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const PrecReal& a, const PrecReal& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const PrecReal& a, const PrecReal& b) { return b < a; }
  friend bool operator<=(const PrecReal& a, const PrecReal& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const PrecReal& a, const PrecReal& b) { return b <= a; }

 private:
  mpfr_t value_;
};

PrecReal abs(const PrecReal& x);
PrecReal sqrt(const PrecReal& x);
PrecReal exp(const PrecReal& x);
// x * 2^e, exact.
PrecReal ldexp(const PrecReal& x, long e);
// Distance between x and y measured in units in the last place of the
// larger magnitude at precision p.
PrecReal ulp_distance(const PrecReal& x, const PrecReal& y, Precision p);

// A value with an upper bound on its absolute error:
// |value - exact| <= error. Error terms are carried at 64 bits and rounded
// upward, so propagated bounds never understate the true error.
class ApproxReal {
 public:
  ApproxReal(PrecReal value, PrecReal error);
  static ApproxReal exact(PrecReal value);
  // Rounds an exact quantity to the given precision and records the
  // rounding error.
  static ApproxReal from(const BigInt& value, Precision precision);
  static ApproxReal from(const BigRational& value, Precision precision);

  const PrecReal& value() const { return value_; }
  const PrecReal& error() const { return error_; }
  Precision precision() const { return value_.precision(); }

  // +1 or -1 when the error bound separates the exact value from zero,
  // 0 otherwise.
  int certain_sign() const;
  bool certainly_positive() const { return certain_sign() > 0; }

  // Rounds the value to the given precision, adding the rounding error.
  ApproxReal rounded(Precision precision) const;

  ApproxReal operator-() const;
  friend ApproxReal operator+(const ApproxReal& a, const ApproxReal& b);
  friend ApproxReal operator-(const ApproxReal& a, const ApproxReal& b);
  friend ApproxReal operator*(const ApproxReal& a, const ApproxReal& b);
  // Throws SingularityError when the divisor's error bound reaches zero.
  friend ApproxReal operator/(const ApproxReal& a, const ApproxReal& b);

 private:
  PrecReal value_;
  PrecReal error_;
};

ApproxReal abs(const ApproxReal& x);
ApproxReal sqrt(const ApproxReal& x);
ApproxReal exp(const ApproxReal& x);

namespace error_arith {

// Upward-rounded arithmetic on non-negative error terms.
PrecReal add(const PrecReal& a, const PrecReal& b);
PrecReal mul(const PrecReal& a, const PrecReal& b);
PrecReal div(const PrecReal& a, const PrecReal& b);
// Bound on |fl(v) - v| for a value v produced by one round-to-nearest
// operation at precision p: one ulp of v.
PrecReal rounding(const PrecReal& v, Precision p);
// |x| rounded upward to 64 bits.
PrecReal magnitude(const PrecReal& x);

}  // namespace error_arith

}  // namespace mills
