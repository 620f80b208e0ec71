#include <doctest.h>

#include <thread>
#include <vector>

#include "mills/big.hpp"

using mills::BigInt;
using mills::BigRational;
using mills::DomainError;
using mills::parse_rational;

TEST_CASE("parse_rational reads fractions and decimals exactly") {
  CHECK(parse_rational("7/3") == BigRational(7, 3));
  CHECK(parse_rational("-2") == BigRational(-2));
  CHECK(parse_rational("0.1") == BigRational(1, 10));
  CHECK(parse_rational("-0.25") == BigRational(-1, 4));
  CHECK(parse_rational("1.25e-3") == BigRational(1, 800));
  CHECK(parse_rational("2E2") == BigRational(200));
  CHECK(parse_rational("6/4") == BigRational(3, 2));
  CHECK(parse_rational("+.5") == BigRational(1, 2));
  CHECK(parse_rational(" 1 ") == BigRational(1));
}

TEST_CASE("parse_rational rejects malformed text") {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "--1", "1e", "0x10", "1 2"}) {
    CAPTURE(std::string(bad));
    CHECK_THROWS_AS(parse_rational(bad), DomainError);
  }
}

TEST_CASE("rationals print in lowest terms") {
  CHECK(mills::to_string(mills::make_rational(BigInt(6), BigInt(4))) == "3/2");
  CHECK(mills::to_string(BigRational(-5)) == "-5");
  CHECK(mills::to_string(BigRational(0)) == "0");
  CHECK(mills::make_rational(BigInt(4), BigInt(-6)) == BigRational(-2, 3));
  CHECK_THROWS_AS(mills::make_rational(BigInt(1), BigInt(0)), DomainError);
}

TEST_CASE("factorial and binomial") {
  CHECK(mills::factorial(0) == 1);
  CHECK(mills::factorial(5) == 120);
  CHECK(mills::factorial(20) == BigInt("2432902008176640000"));
  CHECK(mills::binomial(6, 3) == 20);
  CHECK(mills::binomial(10, 0) == 1);
  CHECK(mills::binomial(3, 5) == 0);
  CHECK(mills::binomial(3, -1) == 0);
  // Pascal's rule against the direct formula.
  for (long n = 1; n < 40; ++n) {
    for (long k = 1; k < n; ++k) {
      CHECK(mills::binomial(n, k) == mills::binomial(n - 1, k - 1) + mills::binomial(n - 1, k));
    }
  }
}

TEST_CASE("factorial cache is safe under concurrent growth") {
  std::vector<std::thread> threads;
  std::vector<BigInt> results(8);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([t, &results] { results[t] = mills::factorial(200 + 10 * t); });
  }
  for (auto& t : threads) t.join();
  for (int t = 0; t < 8; ++t) {
    BigInt expected = 1;
    for (long k = 2; k <= 200 + 10 * t; ++k) expected *= k;
    CHECK(results[t] == expected);
  }
}
