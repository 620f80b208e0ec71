#include <doctest.h>

#include <map>
#include <string>
#include <thread>

#include <mpfr.h>

#include "mills/oracle.hpp"
#include "test_support.hpp"

using mills::ApproxReal;
using mills::OracleValue;
using mills::PrecReal;
using mills::testing::real;

namespace {

// Reference values, 50 significant digits (mpmath, erfc route).
const std::map<std::string, std::string> kPhi = {
    {"-5", "672621.63672287925230729800452973042912157756290634"},
    {"-2", "18.100247711126152662358894822266456462137655901813"},
    {"-1", "3.4770518117036944669255206535690413660462395841208"},
    {"-0.5", "1.9640174953579937536798330327319918080905495245058"},
    {"0", "1.253314137315500251207882642405522626503493370305"},
    {"0.5", "0.87636445645369234672785314263984886086010979753458"},
    {"1", "0.65567954241879847154387123073081128339928233287046"},
    {"2", "0.42136922928805447322493433354238497871759897424685"},
    {"5", "0.19280810471531576487746572791751625149030275528504"},
    {"10", "0.099028596471731921395337188595310578345522351804893"},
    {"20", "0.049875925981836783658240561473547677421984200939185"},
    {"30", "0.033296419072497213381868401852872790022761820546503"},
};

bool within(const OracleValue& v, const std::string& reference) {
  const PrecReal ref = real(reference, 256);
  // The 50-digit reference carries its own rounding error.
  const PrecReal slack = abs(ref) * PrecReal::power_of_two(-160);
  return abs(v.value - ref) <= v.error_bound + slack;
}

// e^(x^2/2) sqrt(pi/2) erfc(x/sqrt(2)) through MPFR's erfc.
PrecReal mpfr_reference(const PrecReal& x, mills::Precision precision) {
  PrecReal t(precision);
  PrecReal half_pi = PrecReal::pi(precision) / PrecReal(2L, precision);
  mpfr_sqrt(half_pi.get(), half_pi.get(), MPFR_RNDN);
  PrecReal root_two(2L, precision);
  mpfr_sqrt(root_two.get(), root_two.get(), MPFR_RNDN);
  const PrecReal xw = x.rounded(precision);
  PrecReal e = xw / root_two;
  mpfr_erfc(e.get(), e.get(), MPFR_RNDN);
  const PrecReal gauss = mills::exp(mills::ldexp(xw * xw, -1));
  return gauss * half_pi * e;
}

const char* const kGrid[] = {"-5", "-2", "-1", "-0.5", "0", "0.5", "1", "2", "5", "10", "20"};

}  // namespace

TEST_CASE("series oracle matches reference values") {
  for (const auto& [x, reference] : kPhi) {
    CAPTURE(x);
    for (mills::Precision p : {64L, 128L, 150L}) {
      const OracleValue v = mills::phi_series(real(x, p), p);
      CHECK(v.method == mills::OracleMethod::kSeries);
      CHECK(within(v, reference));
      // Relative error bound stays within 2^(8 - p).
      CHECK(v.error_bound <= abs(v.value) * PrecReal::power_of_two(8 - p));
    }
  }
}

TEST_CASE("quadrature oracle matches reference values") {
  for (const auto& [x, reference] : kPhi) {
    CAPTURE(x);
    for (mills::Precision p : {64L, 128L}) {
      const OracleValue v = mills::phi_quadrature(real(x, p), p);
      CHECK(v.method == mills::OracleMethod::kQuadrature);
      CHECK(within(v, reference));
      CHECK(v.error_bound <= abs(v.value) * PrecReal::power_of_two(8 - p));
    }
  }
}

TEST_CASE("phi at zero is sqrt(pi/2)") {
  const OracleValue v = mills::phi_series(PrecReal(192), 192);
  PrecReal half_pi = PrecReal::pi(400) / PrecReal(2L, 400);
  mpfr_sqrt(half_pi.get(), half_pi.get(), MPFR_RNDN);
  CHECK(abs(v.value - half_pi) <= PrecReal::power_of_two(-160));
}

TEST_CASE("series and quadrature agree within combined bounds") {
  for (const char* x : kGrid) {
    for (mills::Precision p : {192L, 256L}) {
      CAPTURE(x);
      CAPTURE(p);
      const PrecReal xp = real(x, p);
      const OracleValue s = mills::phi_series(xp, p);
      const OracleValue q = mills::phi_quadrature(xp, p);
      CHECK(abs(s.value - q.value) <= s.error_bound + q.error_bound);
    }
  }
}

TEST_CASE("MPFR erfc cross-check") {
  for (const char* x : kGrid) {
    CAPTURE(x);
    const PrecReal xp = real(x, 192);
    const OracleValue s = mills::phi_series(xp, 192);
    const PrecReal reference = mpfr_reference(xp, 1024);
    CHECK(abs(s.value - reference) <= s.error_bound);
  }
}

TEST_CASE("error bound does not grow with precision") {
  for (const char* x : kGrid) {
    CAPTURE(x);
    CHECK(mills::phi_series(real(x, 256), 256).error_bound <= mills::phi_series(real(x, 256), 128).error_bound);
    CHECK(mills::phi_quadrature(real(x, 256), 256).error_bound <=
          mills::phi_quadrature(real(x, 256), 128).error_bound);
  }
}

TEST_CASE("first-order ODE residual via central difference") {
  const mills::Precision p = 192;
  const PrecReal h = PrecReal::power_of_two(-p / 3, p);
  for (const char* xs : kGrid) {
    CAPTURE(xs);
    const PrecReal x = real(xs, p);
    const OracleValue plus = mills::phi_series(x + h, p);
    const OracleValue minus = mills::phi_series(x - h, p);
    const OracleValue centre = mills::phi_series(x, p);
    const PrecReal difference = (plus.value - minus.value) / (h + h);
    const PrecReal residual = abs(difference - (x * centre.value - PrecReal(1L, p)));
    // Rounding of the two samples, the oracle error at x, and the Taylor
    // remainder h^2 |phi'''| / 6 with |phi'''| bounded generously.
    const ApproxReal third = mills::phi_derivative(3, x, p);
    const PrecReal taylor = h * h * (abs(third.value()) * PrecReal(2L, 64) + PrecReal(1L, 64));
    const PrecReal bound = (plus.error_bound + minus.error_bound) / (h + h) + abs(x) * centre.error_bound + taylor;
    CHECK(residual <= bound);
  }
}

TEST_CASE("derivative examples") {
  const PrecReal zero(128);
  const ApproxReal d1 = mills::phi_derivative(1, zero, 128);
  CHECK(abs(d1.value() + PrecReal(1L, 128)) <= d1.error());
  const ApproxReal d2 = mills::phi_derivative(2, zero, 128);
  CHECK(mills::testing::encloses(d2, kPhi.at("0")));
  const ApproxReal d0 = mills::phi_derivative(0, real("1", 128), 128);
  CHECK(mills::testing::encloses(d0, kPhi.at("1")));
}

TEST_CASE("derivative signs alternate") {
  for (const char* xs : kGrid) {
    for (std::size_t n = 0; n <= 10; ++n) {
      CAPTURE(xs);
      CAPTURE(n);
      const ApproxReal d = mills::phi_derivative(n, real(xs, 128), 128);
      CHECK(d.certain_sign() == (n % 2 == 0 ? 1 : -1));
    }
  }
}

TEST_CASE("envelope is enforced") {
  CHECK_NOTHROW(mills::phi_series(real("30", 128), 128));
  CHECK_NOTHROW(mills::phi_series(real("-30", 128), 128));
  CHECK_THROWS_AS(mills::phi_series(real("30.5", 128), 128), mills::DomainError);
  CHECK_THROWS_AS(mills::phi_quadrature(real("-31", 128), 128), mills::DomainError);
  CHECK_THROWS_AS(mills::phi_series(real("1", 128), 32), std::invalid_argument);
}

TEST_CASE("concurrent evaluation matches sequential") {
  std::vector<PrecReal> sequential;
  for (const char* x : kGrid) sequential.push_back(mills::phi_series(real(x, 192), 192).value);
  std::vector<PrecReal> parallel(std::size(kGrid), PrecReal(192));
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < std::size(kGrid); ++i) {
    threads.emplace_back([i, &parallel] { parallel[i] = mills::phi_series(real(kGrid[i], 192), 192).value; });
  }
  for (auto& t : threads) t.join();
  for (std::size_t i = 0; i < std::size(kGrid); ++i) CHECK(parallel[i] == sequential[i]);
}
