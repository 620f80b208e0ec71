#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mills {

using BigInt = mpz_class;

// Always canonical: denominator > 0, gcd(|num|, den) = 1, zero is 0/1.
using BigRational = mpq_class;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An identity that must hold exactly did not. Signals an arithmetic or
// transcription bug, never a user error.
class IdentityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

BigRational make_rational(const BigInt& numerator, const BigInt& denominator);

// Accepts "7/3", "-2", "0.1", "1.25e-3". Decimal inputs are read exactly,
// so "0.1" is 1/10.
BigRational parse_rational(std::string_view text);

// "p/q", or "p" when q = 1.
std::string to_string(const BigRational& value);

// n!, cached; safe for concurrent callers.
const BigInt& factorial(std::size_t n);

BigInt binomial(long n, long k);

}  // namespace mills
