#pragma once

// Certified upper and lower bounds for the Mills ratio phi.
//
// First order: Q_2n/P_2n < phi < Q_{2n+1}/P_{2n+1} on x > 0, with
// |phi - Q_n/P_n| < n! / (P_n P_{n+1}).
//
// Second order: phi solves A_n T^2 - B_n T + C_n > 0, whose discriminant is
// (n!)^2 (x^2 + 4n + 4). The roots Z+-_n = (B_n +- n! sqrt(x^2+4n+4)) / (2 A_n)
// give phi > Z+_{2m} on the whole line and phi < Z-_{2m+1} for x > -beta_m,
// where beta_m is the root of A_{2m+1} in (0, 1]. Orders 0 and 1 are the
// classical bounds 2/(x + sqrt(x^2+4)) < phi and phi < 4/(3x + sqrt(x^2+8)).
//
// Every evaluation is carried with an error bound (ApproxReal); bounds are
// computed with 32 guard bits and rounded to the requested precision.

#include <cstddef>
#include <string>
#include <vector>

#include "mills/big.hpp"
#include "mills/mills_polynomials.hpp"
#include "mills/prec_real.hpp"

namespace mills {

// Which inequality a certificate or enclosure side comes from. The wire
// names ("Eq15", "I_3", ...) are part of the report format.
enum class Family {
  kRationalEnclosure,   // "Eq15": Q_2n/P_2n < phi < Q_{2n+1}/P_{2n+1}
  kConvergentError,     // "Eq16": |phi - Q_n/P_n| < n!/(P_n P_{n+1})
  kErrorDecrease,       // "Eq16_decreasing": the error bound falls with n
  kLogConvexity,        // "Eq17": A_n phi^2 - B_n phi + C_n > 0
  kKomatsu,             // "Eq18"
  kSzarekWerner,        // "Eq19"
  kSecondOrder,         // "I_n"
  kSecondOrderSharper,  // "I_n_sharper": second order beats first order
  kDerivativeSign,      // "Deriv_sign": (-1)^n phi^(n) > 0
};

// Wire name; orders are embedded for the second-order families.
std::string family_name(Family family, std::size_t n);

// Parses CLI spellings: "eq15", "eq16", "eq17", "eq18", "eq19", "i", "i3",
// "I_3", "sign". Sets *order when the spelling carries one.
Family parse_family(const std::string& text, std::size_t* order);

struct Provenance {
  std::string family;
  std::size_t order = 0;
};

struct Enclosure {
  PrecReal x;
  ApproxReal lower;
  ApproxReal upper;
  Provenance lower_source;
  Provenance upper_source;
  Precision precision_bits = kDefaultPrecision;
};

enum class Role { kLower, kUpper };

struct BoundValue {
  ApproxReal value;
  Role role;
};

struct BetaRoot {
  std::size_t m = 0;
  PrecReal value;
  // A_{2m+1}(low) < 0 < A_{2m+1}(high) exactly, or low = high = value when
  // the root is rational and was hit exactly.
  BigRational low;
  BigRational high;
};

struct Certificate {
  std::string family;
  std::size_t n = 0;
  BigRational x;
  // Distance from violation: positive when the inequality holds. The
  // verdict is pass only if the margin exceeds its own error bound.
  ApproxReal margin;
  Precision precision_bits = kDefaultPrecision;
  bool pass = false;
};

// Requires x > 0.
Enclosure first_order_enclosure(std::size_t n, const PrecReal& x, Precision precision,
    const PolynomialTable& table = default_table());

// n! / (P_n(x) P_{n+1}(x)); requires x > 0.
ApproxReal first_order_error_bound(std::size_t n, const PrecReal& x, Precision precision,
    const PolynomialTable& table = default_table());

// Q_n(x) / P_n(x); requires P_n(x) != 0.
ApproxReal convergent_value(std::size_t n, const PrecReal& x, Precision precision,
    const PolynomialTable& table = default_table());

ApproxReal komatsu_lower(const PrecReal& x, Precision precision);

// Requires x > -1.
ApproxReal szarek_werner_upper(const PrecReal& x, Precision precision);

enum class RootSign { kPlus, kMinus };

// (B_n ± n! sqrt(x^2+4n+4)) / (2 A_n) as written. Throws SingularityError
// when A_n(x) cannot be separated from zero.
ApproxReal second_order_root(std::size_t n, const PrecReal& x, RootSign sign, Precision precision,
                             const PolynomialTable& table = default_table());

// Even n: the lower bound Z+_n, valid for every real x. Odd n = 2m+1: the
// upper bound Z-_n, valid for x > -beta_m. The root is evaluated in
// whichever of its two algebraically equal forms avoids cancellation,
//   (B ± s) / (2A)   or   2C / (B ∓ s),
// so the odd bound at x = beta_m (where A vanishes) is the finite
// continuity limit 2C/(B + s). Throws DomainError for odd n and
// x <= -beta_m; the domain test is exact.
BoundValue second_order_bound(std::size_t n, const PrecReal& x, Precision precision,
                              const PolynomialTable& table = default_table());

// Default bisection tolerance 2^-40.
BigRational default_beta_tolerance();

// Bisection on exact signs of A_{2m+1} over (0, 1], until the bracket is
// narrower than the tolerance. value is the bracket midpoint.
BetaRoot beta(std::size_t m, const BigRational& tolerance = default_beta_tolerance());

// A_n(x) phi(x)^2 - B_n(x) phi(x) + C_n(x) with the series oracle for phi.
// The working precision is raised until the error bound separates the value
// from zero (or a few doublings have been tried).
ApproxReal log_convexity_check(std::size_t n, const PrecReal& x, Precision precision,
    const PolynomialTable& table = default_table());

// Certificates for every (order, x) pair, sorted by (family, n, x).
// For kSecondOrder with x > 0 the sharper-than-first-order chain is
// certified too (family "I_n_sharper"). For kRationalEnclosure the order n
// names the pair (2n, 2n+1). Grid points are rounded to the working
// precision once; bound and oracle see the same binary x.
// Throws DomainError if a grid point lies outside the family's domain.
// Polynomials come from the given table (a corrupted table is the negative
// control).
std::vector<Certificate> certify_grid(Family family, const std::vector<std::size_t>& orders,
                                      const std::vector<BigRational>& xs, Precision precision,
                                      const PolynomialTable& table = default_table());

// True when x lies in the family's domain at the given order.
bool in_domain(Family family, std::size_t n, const BigRational& x);

}  // namespace mills
