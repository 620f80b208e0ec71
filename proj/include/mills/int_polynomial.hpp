#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mills/big.hpp"
#include "mills/prec_real.hpp"

namespace mills {

// Dense univariate polynomial with arbitrary-precision integer coefficients.
// coefficient(k) multiplies X^k. The stored sequence never ends in a zero,
// so the zero polynomial is empty and has degree -1.
//
// Multiplication is schoolbook O(deg a * deg b); degrees here stay in the
// low hundreds, where that is faster than anything asymptotically better.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial constant(const BigInt& c);
  static IntPolynomial monomial(const BigInt& c, std::size_t power);
  static IntPolynomial x() { return monomial(1, 1); }

  long degree() const { return static_cast<long>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  // Zero beyond the degree.
  const BigInt& coefficient(std::size_t k) const;
  std::span<const BigInt> coefficients() const { return coefficients_; }
  const BigInt& leading_coefficient() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const BigInt& c, const IntPolynomial& a);
  IntPolynomial operator-() const;
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) = default;

 private:
  void trim();

  std::vector<BigInt> coefficients_;
};

IntPolynomial derivative(const IntPolynomial& a);

// Exact Horner evaluation.
BigRational evaluate(const IntPolynomial& a, const BigRational& x);

// Horner evaluation at the given working precision. The returned error
// bound is the classical one, gamma(3d+2) * sum |c_k| |x|^k, where the
// extra roundings cover conversion of coefficients wider than the
// precision; x itself is taken as exact.
ApproxReal evaluate(const IntPolynomial& a, const PrecReal& x, Precision precision);

// Descending powers with integer coefficients, e.g. "x^5 + 10*x^3 + 15*x";
// "0" for the zero polynomial.
std::string to_string(const IntPolynomial& a);

}  // namespace mills
