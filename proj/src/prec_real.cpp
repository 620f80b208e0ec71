#include "mills/prec_real.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <utility>

namespace mills {

namespace {

void check_precision(Precision precision) {
  if (precision < kMinPrecision) {
    throw std::invalid_argument("precision must be at least 64 bits, got " + std::to_string(precision));
  }
}

Precision widest(const PrecReal& a, const PrecReal& b) { return std::max(a.precision(), b.precision()); }

constexpr Precision kErrorPrecision = 64;

}  // namespace

PrecReal::PrecReal(Precision precision) {
  check_precision(precision);
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

PrecReal::PrecReal(long value, Precision precision) : PrecReal(precision) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

PrecReal::PrecReal(const BigInt& value, Precision precision) : PrecReal(precision) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

PrecReal::PrecReal(const BigRational& value, Precision precision) : PrecReal(precision) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

PrecReal PrecReal::from_double(double value, Precision precision) {
  PrecReal result(precision);
  mpfr_set_d(result.value_, value, MPFR_RNDN);
  return result;
}

PrecReal PrecReal::power_of_two(long exponent, Precision precision) {
  PrecReal result(precision);
  mpfr_set_ui_2exp(result.value_, 1, exponent, MPFR_RNDN);
  return result;
}

PrecReal PrecReal::pi(Precision precision) {
  PrecReal result(precision);
  mpfr_const_pi(result.value_, MPFR_RNDN);
  return result;
}

PrecReal::PrecReal(const PrecReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

PrecReal::PrecReal(PrecReal&& other) noexcept {
  mpfr_init2(value_, kMinPrecision);
  mpfr_swap(value_, other.value_);
}

PrecReal& PrecReal::operator=(const PrecReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

PrecReal& PrecReal::operator=(PrecReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

PrecReal::~PrecReal() { mpfr_clear(value_); }

BigRational PrecReal::to_rational() const {
  if (!is_finite()) {
    throw DomainError("non-finite value has no rational form");
  }
  if (is_zero()) return BigRational(0);
  BigInt mantissa;
  long e = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  BigRational result(mantissa);
  if (e >= 0) {
    mpq_mul_2exp(result.get_mpq_t(), result.get_mpq_t(), static_cast<unsigned long>(e));
  } else {
    mpq_div_2exp(result.get_mpq_t(), result.get_mpq_t(), static_cast<unsigned long>(-e));
  }
  return result;
}

std::string PrecReal::to_decimal(int significant_digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() > 0 ? "inf" : "-inf";
  if (is_zero()) return "0";
  significant_digits = std::max(significant_digits, 2);
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(significant_digits), value_, MPFR_RNDN),
      mpfr_free_str);
  std::string digits(raw.get());
  std::string sign_text;
  if (digits.front() == '-') {
    sign_text = "-";
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  const long point = exp10;  // value = 0.digits * 10^point
  const long n = static_cast<long>(digits.size());
  std::string text;
  if (point > 21 || point < -6) {
    text = digits.substr(0, 1);
    if (n > 1) text += "." + digits.substr(1);
    text += "e" + std::string(point - 1 >= 0 ? "+" : "-") + std::to_string(std::labs(point - 1));
  } else if (point <= 0) {
    text = "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
  } else if (point >= n) {
    text = digits + std::string(static_cast<std::size_t>(point - n), '0');
  } else {
    text = digits.substr(0, static_cast<std::size_t>(point)) + "." + digits.substr(static_cast<std::size_t>(point));
  }
  return sign_text + text;
}

PrecReal PrecReal::rounded(Precision precision) const {
  PrecReal result(precision);
  mpfr_set(result.value_, value_, MPFR_RNDN);
  return result;
}

PrecReal PrecReal::operator-() const {
  PrecReal result(precision());
  mpfr_neg(result.value_, value_, MPFR_RNDN);
  return result;
}

PrecReal operator+(const PrecReal& a, const PrecReal& b) {
  PrecReal result(widest(a, b));
  mpfr_add(result.value_, a.value_, b.value_, MPFR_RNDN);
  return result;
}

PrecReal operator-(const PrecReal& a, const PrecReal& b) {
  PrecReal result(widest(a, b));
  mpfr_sub(result.value_, a.value_, b.value_, MPFR_RNDN);
  return result;
}

PrecReal operator*(const PrecReal& a, const PrecReal& b) {
  PrecReal result(widest(a, b));
  mpfr_mul(result.value_, a.value_, b.value_, MPFR_RNDN);
  return result;
}

PrecReal operator/(const PrecReal& a, const PrecReal& b) {
  PrecReal result(widest(a, b));
  mpfr_div(result.value_, a.value_, b.value_, MPFR_RNDN);
  return result;
}

PrecReal abs(const PrecReal& x) {
  PrecReal result(x.precision());
  mpfr_abs(result.get(), x.get(), MPFR_RNDN);
  return result;
}

PrecReal sqrt(const PrecReal& x) {
  PrecReal result(x.precision());
  mpfr_sqrt(result.get(), x.get(), MPFR_RNDN);
  return result;
}

PrecReal exp(const PrecReal& x) {
  PrecReal result(x.precision());
  mpfr_exp(result.get(), x.get(), MPFR_RNDN);
  return result;
}

PrecReal ldexp(const PrecReal& x, long e) {
  PrecReal result(x.precision());
  mpfr_mul_2si(result.get(), x.get(), e, MPFR_RNDN);
  return result;
}

PrecReal ulp_distance(const PrecReal& x, const PrecReal& y, Precision p) {
  PrecReal diff(std::max(widest(x, y), p) + 8);
  mpfr_sub(diff.get(), x.get(), y.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  const PrecReal& larger = mpfr_cmpabs(x.get(), y.get()) >= 0 ? x : y;
  if (larger.is_zero()) return PrecReal(kMinPrecision);
  // ulp at precision p of a number in [2^(E-1), 2^E) is 2^(E-p).
  return ldexp(diff, p - larger.exponent()).rounded(kMinPrecision);
}

namespace error_arith {

namespace {

PrecReal make() { return PrecReal(kErrorPrecision); }

}  // namespace

PrecReal add(const PrecReal& a, const PrecReal& b) {
  PrecReal r = make();
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

PrecReal mul(const PrecReal& a, const PrecReal& b) {
  PrecReal r = make();
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

PrecReal div(const PrecReal& a, const PrecReal& b) {
  PrecReal r = make();
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

PrecReal rounding(const PrecReal& v, Precision p) {
  if (v.is_zero()) return make();
  return PrecReal::power_of_two(v.exponent() - p, kErrorPrecision);
}

PrecReal magnitude(const PrecReal& x) {
  PrecReal r = make();
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

}  // namespace error_arith

namespace {

using error_arith::add;
using error_arith::magnitude;
using error_arith::mul;
using error_arith::rounding;

// Lower bound of |x| - e at 64 bits (may be negative).
PrecReal magnitude_minus(const PrecReal& x, const PrecReal& e) {
  PrecReal ax(kErrorPrecision);
  mpfr_abs(ax.get(), x.get(), MPFR_RNDD);
  PrecReal r(kErrorPrecision);
  mpfr_sub(r.get(), ax.get(), e.get(), MPFR_RNDD);
  return r;
}

}  // namespace

ApproxReal::ApproxReal(PrecReal value, PrecReal error) : value_(std::move(value)), error_(magnitude(error)) {}

ApproxReal ApproxReal::exact(PrecReal value) { return ApproxReal(std::move(value), PrecReal(kErrorPrecision)); }

ApproxReal ApproxReal::from(const BigInt& value, Precision precision) {
  PrecReal v(value, precision);
  return ApproxReal(v, rounding(v, precision));
}

ApproxReal ApproxReal::from(const BigRational& value, Precision precision) {
  PrecReal v(value, precision);
  return ApproxReal(v, rounding(v, precision));
}

int ApproxReal::certain_sign() const {
  if (mpfr_cmpabs(value_.get(), error_.get()) <= 0) return 0;
  return value_.sign();
}

ApproxReal ApproxReal::rounded(Precision precision) const {
  PrecReal v = value_.rounded(precision);
  PrecReal e = error_;
  if (!(v == value_)) e = add(e, rounding(v, precision));
  return ApproxReal(std::move(v), std::move(e));
}

ApproxReal ApproxReal::operator-() const { return ApproxReal(-value_, error_); }

ApproxReal operator+(const ApproxReal& a, const ApproxReal& b) {
  PrecReal v = a.value_ + b.value_;
  return ApproxReal(v, add(add(a.error_, b.error_), rounding(v, v.precision())));
}

ApproxReal operator-(const ApproxReal& a, const ApproxReal& b) {
  PrecReal v = a.value_ - b.value_;
  return ApproxReal(v, add(add(a.error_, b.error_), rounding(v, v.precision())));
}

ApproxReal operator*(const ApproxReal& a, const ApproxReal& b) {
  PrecReal v = a.value_ * b.value_;
  PrecReal e = add(mul(magnitude(a.value_), b.error_), mul(magnitude(b.value_), a.error_));
  e = add(e, mul(a.error_, b.error_));
  return ApproxReal(v, add(e, rounding(v, v.precision())));
}

ApproxReal operator/(const ApproxReal& a, const ApproxReal& b) {
  PrecReal slack = magnitude_minus(b.value_, b.error_);
  if (slack.sign() <= 0) {
    throw SingularityError("divisor is indistinguishable from zero at working precision");
  }
  PrecReal v = a.value_ / b.value_;
  // |a/b - a*/b*| <= (|a| eb + |b| ea) / (|b| (|b| - eb))
  PrecReal numerator = add(mul(magnitude(a.value_), b.error_), mul(magnitude(b.value_), a.error_));
  PrecReal b_low(kErrorPrecision);
  mpfr_abs(b_low.get(), b.value_.get(), MPFR_RNDD);
  PrecReal denominator(kErrorPrecision);
  mpfr_mul(denominator.get(), b_low.get(), slack.get(), MPFR_RNDD);
  PrecReal e = error_arith::div(numerator, denominator);
  return ApproxReal(v, add(e, rounding(v, v.precision())));
}

ApproxReal abs(const ApproxReal& x) { return ApproxReal(abs(x.value()), x.error()); }

ApproxReal sqrt(const ApproxReal& x) {
  if (x.certain_sign() < 0) {
    throw DomainError("square root of a negative quantity");
  }
  PrecReal arg = x.value().sign() < 0 ? PrecReal(x.precision()) : x.value();
  PrecReal v = sqrt(arg);
  PrecReal e(kErrorPrecision);
  PrecReal low = magnitude_minus(arg, x.error());
  if (low.sign() > 0) {
    // |sqrt(a) - sqrt(a*)| <= ea / sqrt(a - ea)
    PrecReal root_low(kErrorPrecision);
    mpfr_sqrt(root_low.get(), low.get(), MPFR_RNDD);
    e = error_arith::div(x.error(), root_low);
  } else {
    // Exact argument lies in [0, a + ea].
    e = add(magnitude(arg), x.error());
    mpfr_sqrt(e.get(), e.get(), MPFR_RNDU);
  }
  return ApproxReal(v, add(e, rounding(v, v.precision())));
}

ApproxReal exp(const ApproxReal& x) {
  PrecReal v = exp(x.value());
  // |e^a* - e^a| <= e^a (e^ea - 1) <= e^a * ea * e^ea
  PrecReal growth(kErrorPrecision);
  mpfr_exp(growth.get(), x.error().get(), MPFR_RNDU);
  PrecReal e = mul(mul(magnitude(v), x.error()), growth);
  e = mul(e, PrecReal::from_double(1.0 + 0x1p-60, kErrorPrecision));
  return ApproxReal(v, add(e, rounding(v, v.precision())));
}

}  // namespace mills
