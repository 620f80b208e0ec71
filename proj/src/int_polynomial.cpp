#include "mills/int_polynomial.hpp"

#include <algorithm>
#include <utility>

namespace mills {

namespace {

const BigInt& zero_coefficient() {
  static const BigInt zero(0);
  return zero;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coefficients_(std::move(coefficients)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  coefficients_.reserve(coefficients.size());
  for (long c : coefficients) coefficients_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }

IntPolynomial IntPolynomial::monomial(const BigInt& c, std::size_t power) {
  std::vector<BigInt> coefficients(power + 1);
  coefficients[power] = c;
  return IntPolynomial(std::move(coefficients));
}

const BigInt& IntPolynomial::coefficient(std::size_t k) const {
  return k < coefficients_.size() ? coefficients_[k] : zero_coefficient();
}

const BigInt& IntPolynomial::leading_coefficient() const {
  return is_zero() ? zero_coefficient() : coefficients_.back();
}

void IntPolynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> sum(std::max(a.coefficients_.size(), b.coefficients_.size()));
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = a.coefficient(k) + b.coefficient(k);
  return IntPolynomial(std::move(sum));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> difference(std::max(a.coefficients_.size(), b.coefficients_.size()));
  for (std::size_t k = 0; k < difference.size(); ++k) difference[k] = a.coefficient(k) - b.coefficient(k);
  return IntPolynomial(std::move(difference));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> product(a.coefficients_.size() + b.coefficients_.size() - 1);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    if (a.coefficients_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
      mpz_addmul(product[i + j].get_mpz_t(), a.coefficients_[i].get_mpz_t(), b.coefficients_[j].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(product));
}

IntPolynomial operator*(const BigInt& c, const IntPolynomial& a) {
  std::vector<BigInt> scaled(a.coefficients_);
  for (auto& coefficient : scaled) coefficient *= c;
  return IntPolynomial(std::move(scaled));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<BigInt> negated(coefficients_);
  for (auto& coefficient : negated) coefficient = -coefficient;
  return IntPolynomial(std::move(negated));
}

IntPolynomial derivative(const IntPolynomial& a) {
  if (a.degree() < 1) return {};
  std::vector<BigInt> result(static_cast<std::size_t>(a.degree()));
  for (std::size_t k = 1; k <= result.size(); ++k) {
    result[k - 1] = a.coefficient(k) * static_cast<unsigned long>(k);
  }
  return IntPolynomial(std::move(result));
}

BigRational evaluate(const IntPolynomial& a, const BigRational& x) {
  if (a.is_zero()) return BigRational(0);
  // With x = p/q: a(x) = (sum c_k p^k q^(d-k)) / q^d, all in integers.
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  const auto coefficients = a.coefficients();
  BigInt numerator = coefficients.back();
  BigInt q_power = 1;
  for (std::size_t k = coefficients.size() - 1; k-- > 0;) {
    q_power *= q;
    numerator = numerator * p + coefficients[k] * q_power;
  }
  return make_rational(numerator, q_power);
}

ApproxReal evaluate(const IntPolynomial& a, const PrecReal& x, Precision precision) {
  if (precision < kMinPrecision) {
    throw std::invalid_argument("precision must be at least 64 bits");
  }
  if (a.is_zero()) return ApproxReal::exact(PrecReal(precision));
  const auto coefficients = a.coefficients();
  PrecReal value(precision);
  // Running sum of |c_k| |x|^k, rounded upward.
  PrecReal absolute(kMinPrecision);
  PrecReal abs_x = error_arith::magnitude(x);
  PrecReal c(precision);
  PrecReal c_abs(kMinPrecision);
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    mpfr_mul(value.get(), value.get(), x.get(), MPFR_RNDN);
    mpfr_set_z(c.get(), coefficients[k].get_mpz_t(), MPFR_RNDN);
    mpfr_add(value.get(), value.get(), c.get(), MPFR_RNDN);

    mpfr_set_z(c_abs.get(), coefficients[k].get_mpz_t(), MPFR_RNDA);
    mpfr_abs(c_abs.get(), c_abs.get(), MPFR_RNDU);
    mpfr_mul(absolute.get(), absolute.get(), abs_x.get(), MPFR_RNDU);
    mpfr_add(absolute.get(), absolute.get(), c_abs.get(), MPFR_RNDU);
  }
  // Three roundings per Horner step (product, coefficient conversion, sum).
  // gamma(k) = k u / (1 - k u) with u = 2^-precision is at most 2 k u
  // whenever k u <= 1/2, which holds for any degree we can store.
  const long k = 3 * a.degree() + 2;
  PrecReal gamma = PrecReal::power_of_two(1 - precision);
  gamma = error_arith::mul(gamma, PrecReal(k, kMinPrecision));
  return ApproxReal(std::move(value), error_arith::mul(gamma, absolute));
}

std::string to_string(const IntPolynomial& a) {
  if (a.is_zero()) return "0";
  std::string text;
  for (long k = a.degree(); k >= 0; --k) {
    const BigInt& c = a.coefficient(static_cast<std::size_t>(k));
    if (c == 0) continue;
    const bool first = text.empty();
    BigInt magnitude = abs(c);
    if (first) {
      if (c < 0) text += "-";
    } else {
      text += c < 0 ? " - " : " + ";
    }
    if (k == 0) {
      text += magnitude.get_str();
      continue;
    }
    if (magnitude != 1) text += magnitude.get_str() + "*";
    text += "x";
    if (k > 1) text += "^" + std::to_string(k);
  }
  return text;
}

}  // namespace mills
