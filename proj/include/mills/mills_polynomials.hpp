#pragma once

// The polynomial pairs (P_n, Q_n) with phi^(n) = P_n phi - Q_n for the Mills
// ratio phi(x) = e^(x^2/2) int_x^inf e^(-t^2/2) dt, and the quadratic forms
// built from consecutive pairs.
//
// P_n is a rescaled Hermite polynomial: with H_n the physicists' Hermite
// polynomials, P_n(X) = (-i/sqrt(2))^n H_n(i X / sqrt(2)). Note the power n
// on the prefactor. The relation is not used at runtime; p_closed_form pins
// the same coefficients.

#include <cstddef>
#include <deque>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "mills/big.hpp"
#include "mills/int_polynomial.hpp"

namespace mills {

struct PQPair {
  std::size_t n = 0;
  IntPolynomial p;  // degree n, monic, parity of n
  IntPolynomial q;  // degree n - 1 for n >= 1, monic, parity of n - 1
};

// a = P_n P_{n+2} - P_{n+1}^2, b = P_n Q_{n+2} + P_{n+2} Q_n - 2 P_{n+1} Q_{n+1},
// c = Q_n Q_{n+2} - Q_{n+1}^2. phi satisfies a phi^2 - b phi + c > 0.
struct QuadraticTriple {
  std::size_t n = 0;
  IntPolynomial a;
  IntPolynomial b;
  IntPolynomial c;
};

// Grow-only cache of (P_n, Q_n) generated by the three-term recurrences
//   P_{n+1} = X P_n + n P_{n-1},  Q_{n+1} = X Q_n + n Q_{n-1}.
// Readers share a lock; extension is serialized. Returned references stay
// valid for the lifetime of the table.
class PolynomialTable {
 public:
  PolynomialTable();

  const PQPair& pq_pair(std::size_t n) const;

  // Test hook: a table whose entry n has 1 added to P_n. Entries above n are
  // generated from the corrupted one.
  static std::unique_ptr<PolynomialTable> with_corruption(std::size_t n);

 private:
  mutable std::shared_mutex mutex_;
  mutable std::deque<PQPair> pairs_;
};

const PolynomialTable& default_table();

const PQPair& pq_pair(std::size_t n);

// sum_{k <= n/2} n! / (2^k k! (n-2k)!) X^(n-2k)
IntPolynomial p_closed_form(std::size_t n);

// Q_n = sum_{k <= (n-1)/2} (n-1-k)! / (n-1-2k)! * P_{n-1-2k}, with the P's
// from p_closed_form. Requires n >= 1.
IntPolynomial q_closed_form(std::size_t n);

// Q_n with explicit coefficients:
// Q_{n+1} = sum_k [sum_{j<=k} (n-k+j)! / (2^j j!)] / (n-2k)! * X^(n-2k).
// Requires n >= 1.
IntPolynomial q_coefficient_form(std::size_t n);

QuadraticTriple quadratic_triple(std::size_t n, const PolynomialTable& table = default_table());

// A_n assembled from its generating-function coefficients rather than from
// products of P's. The coefficient of X^(2m) is n! a_{m,n} / m! with
//   a_{0,n} = (-1)^n (n+1) / 2^n * C(n, floor(n/2))
//   a_{1,n} = (1 - (-1)^n) / 2^n * n * C(n-1, floor(n/2))
//   a_{m,n} = sum_{k <= (n-m)/2} (2k+1)! / (4^k k!^2) * C(n-2k-2, m-2),  m >= 2.
// Throws IdentityViolation if any coefficient fails to be an integer.
IntPolynomial a_closed_form(std::size_t n);

// B_n^2 - 4 A_n C_n, checked against (n!)^2 (X^2 + 4n + 4); returns the
// closed form. Throws IdentityViolation if the two disagree.
IntPolynomial discriminant(std::size_t n, const PolynomialTable& table = default_table());

// |sum_{n < terms} A_n(x) y^n / n! - e^(y x^2 / (1-y)) / ((1+y) sqrt(1-y^2))|
// with the partial sum exact and the closed form at the given precision.
// Requires |y| < 1 and terms >= 1.
PrecReal generating_function_residual(const BigRational& x, const BigRational& y, std::size_t terms,
                                      Precision precision);

struct IdentityCheck {
  std::string identity;
  std::size_t n = 0;
  bool pass = false;
};

// Checks, for every n up to n_max, each exact identity of the family:
// derivative recurrences, three-term recurrences, P_n' = n P_{n-1}, closed
// forms of P and Q against the recurrence output, the lower-bound
// coefficients of P, both Casoratian identities, the discriminant and the
// closed form of A_n, plus parity and coefficient positivity. Failures are
// report entries, not exceptions.
std::vector<IdentityCheck> verify_identities(std::size_t n_max, const PolynomialTable& table = default_table());

}  // namespace mills
