#include <doctest.h>

#include "mills/continued_fraction.hpp"
#include "mills/mills_polynomials.hpp"
#include "mills/oracle.hpp"
#include "test_support.hpp"

using mills::BigRational;
using mills::PrecReal;

namespace {

// 1/(x + 1/(x + 2/(x + ... + depth/x))) in exact arithmetic.
BigRational exact_ladder(std::size_t depth, const BigRational& x) {
  BigRational tail = x;
  for (std::size_t k = depth; k >= 1; --k) tail = x + BigRational(static_cast<unsigned long>(k)) / tail;
  return 1 / tail;
}

BigRational ratio(std::size_t n, const BigRational& x) {
  return evaluate(mills::pq_pair(n).q, x) / evaluate(mills::pq_pair(n).p, x);
}

}  // namespace

TEST_CASE("partial quotients") {
  CHECK(mills::cf_b(0) == 1);
  CHECK(mills::cf_b(1) == 1);
  CHECK(mills::cf_b(2) == BigRational(1, 2));
  CHECK(mills::cf_b(3) == BigRational(2, 3));
  CHECK(mills::cf_b(4) == BigRational(3, 8));
  CHECK(mills::cf_b(5) == BigRational(8, 15));
  CHECK(mills::cf_b(6) == BigRational(5, 16));
  for (std::size_t n = 0; n <= 100; ++n) {
    CHECK(mills::cf_b(2 * n) * mills::cf_b(2 * n + 1) * static_cast<unsigned long>(2 * n + 1) == 1);
  }
}

TEST_CASE("expansion rendering") {
  CHECK(mills::render_expansion(6) == "[0; 1*x, 1*x, 1/2*x, 2/3*x, 3/8*x, 8/15*x, ...]");
  CHECK(mills::render_expansion(0) == "[0]");
}

TEST_CASE("convergents") {
  CHECK(mills::cf_convergent(1, BigRational(2)) == BigRational(1, 2));
  CHECK(mills::cf_convergent(4, BigRational(1)) == BigRational(3, 5));
  CHECK(mills::cf_convergent(5, BigRational(1)) == BigRational(9, 13));
  for (const BigRational& x : {BigRational(1, 2), BigRational(1), BigRational(7, 3)}) {
    for (std::size_t n = 1; n <= 50; ++n) CHECK(mills::cf_convergent(n, x) == ratio(n, x));
  }
  CHECK_THROWS_AS(mills::cf_convergent(0, BigRational(1)), mills::DomainError);
  CHECK_THROWS_AS(mills::cf_convergent(3, BigRational(0)), mills::DomainError);
  CHECK_THROWS_AS(mills::cf_convergent(3, BigRational(-1)), mills::DomainError);
}

TEST_CASE("the ladder of depth d is the convergent of order d + 1") {
  // Established on exact values before relying on it numerically.
  for (const BigRational& x : {BigRational(1, 2), BigRational(1), BigRational(2), BigRational(5), BigRational(7, 3)}) {
    for (std::size_t d = 1; d <= 30; ++d) {
      CHECK(exact_ladder(d, x) == ratio(d + 1, x));
      CHECK(exact_ladder(d, x) != ratio(d, x));
    }
  }
  for (const char* xs : {"1", "2", "5"}) {
    const BigRational x = mills::parse_rational(xs);
    for (std::size_t d = 1; d <= 40; ++d) {
      const PrecReal ladder = mills::cf_ladder_eval(d, PrecReal(x, 128), 128);
      const PrecReal exact(ratio(d + 1, x), 128);
      CHECK(mills::ulp_distance(ladder, exact, 128) <= PrecReal(4L * static_cast<long>(d), 64));
    }
  }
  CHECK(mills::cf_ladder_eval(1, PrecReal(1L, 128), 128) == PrecReal(mills::parse_rational("0.5"), 128));
  CHECK_THROWS_AS(mills::cf_ladder_eval(0, PrecReal(1L, 128), 128), mills::DomainError);
  CHECK_THROWS_AS(mills::cf_ladder_eval(3, PrecReal(-1L, 128), 128), mills::DomainError);
}

TEST_CASE("convergents alternate around phi") {
  for (const char* xs : {"1/2", "1", "3"}) {
    const BigRational x = mills::parse_rational(xs);
    const mills::OracleValue phi = mills::phi_series(PrecReal(x, 192), 192);
    for (std::size_t n = 1; n <= 30; ++n) {
      const PrecReal c(mills::cf_convergent(n, x), 192);
      if (n % 2 == 0) {
        CHECK(c + phi.error_bound < phi.value);
      } else {
        CHECK(c - phi.error_bound > phi.value);
      }
    }
  }
}

TEST_CASE("deep ladder reaches phi") {
  const PrecReal x(3L, 128);
  const PrecReal ladder = mills::cf_ladder_eval(40, x, 128);
  CHECK(mills::testing::close_to(ladder, "0.3045902987101032957336125", "1e-10"));
}
