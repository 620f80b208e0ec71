#include <doctest.h>

#include <algorithm>

#include "mills/bounds.hpp"
#include "mills/oracle.hpp"
#include "test_support.hpp"

using mills::ApproxReal;
using mills::BigRational;
using mills::Family;
using mills::PrecReal;
using mills::testing::encloses;
using mills::testing::real;

namespace {

constexpr mills::Precision kPrec = 128;

PrecReal at(const std::string& x) { return real(x, kPrec); }

bool equals_rational(const ApproxReal& v, const BigRational& exact) {
  return abs(PrecReal(v.value().to_rational() - exact, 512)) <= v.error();
}

}  // namespace

TEST_CASE("first-order enclosure examples") {
  const auto e0 = mills::first_order_enclosure(0, at("2"), kPrec);
  CHECK(e0.lower.value().is_zero());
  CHECK(equals_rational(e0.upper, BigRational(1, 2)));
  CHECK(e0.lower_source.family == "Eq15");
  CHECK(e0.lower_source.order == 0);
  CHECK(e0.upper_source.order == 1);
  const auto e1 = mills::first_order_enclosure(1, at("1"), kPrec);
  CHECK(equals_rational(e1.lower, BigRational(1, 2)));
  CHECK(equals_rational(e1.upper, BigRational(3, 4)));
  const auto e2 = mills::first_order_enclosure(2, at("1"), kPrec);
  CHECK(equals_rational(e2.lower, BigRational(6, 10)));
  CHECK(equals_rational(e2.upper, BigRational(18, 26)));
  CHECK(e2.lower.value() < e2.upper.value());
  CHECK_THROWS_AS(mills::first_order_enclosure(1, at("0"), kPrec), mills::DomainError);
  CHECK_THROWS_AS(mills::first_order_enclosure(1, at("-1"), kPrec), mills::DomainError);
}

TEST_CASE("first-order error bound examples") {
  CHECK(equals_rational(mills::first_order_error_bound(0, at("2"), kPrec), BigRational(1, 2)));
  CHECK(equals_rational(mills::first_order_error_bound(1, at("1"), kPrec), BigRational(1, 2)));
  CHECK(equals_rational(mills::first_order_error_bound(4, at("1"), kPrec), BigRational(6, 65)));
  CHECK_THROWS_AS(mills::first_order_error_bound(1, at("0"), kPrec), mills::DomainError);
}

TEST_CASE("error bound decreases strictly in n") {
  for (int k = 1; k <= 100; k += 7) {
    const PrecReal x(BigRational(k, 10), kPrec);
    for (std::size_t n = 0; n < 25; ++n) {
      const ApproxReal gap = mills::first_order_error_bound(n, x, kPrec) - mills::first_order_error_bound(n + 1, x, kPrec);
      CHECK(gap.certainly_positive());
    }
  }
}

TEST_CASE("classical bounds") {
  CHECK(equals_rational(mills::komatsu_lower(at("0"), kPrec), BigRational(1)));
  CHECK(equals_rational(mills::komatsu_lower(at("3/2"), kPrec), BigRational(1, 2)));
  CHECK(encloses(mills::komatsu_lower(at("-2"), kPrec), "2.4142135623730950488016887242096980785696718753769"));
  CHECK(encloses(mills::szarek_werner_upper(at("0"), kPrec), "1.4142135623730950488016887242096980785696718753769"));
  CHECK(equals_rational(mills::szarek_werner_upper(at("1"), kPrec), BigRational(2, 3)));
  CHECK(encloses(mills::szarek_werner_upper(at("-1/2"), kPrec), "2.9148542155126762199502038227396431060734214859943"));
  CHECK_THROWS_WITH_AS(mills::szarek_werner_upper(at("-1"), kPrec), "x must exceed -1", mills::DomainError);
  CHECK_THROWS_AS(mills::szarek_werner_upper(at("-2"), kPrec), mills::DomainError);
}

TEST_CASE("second-order roots") {
  using mills::RootSign;
  CHECK(equals_rational(mills::second_order_root(0, at("0"), RootSign::kPlus, kPrec), BigRational(1)));
  CHECK(encloses(mills::second_order_root(1, at("2"), RootSign::kMinus, kPrec),
                 "0.42264973081037423549085121949804254435239824872987"));
  CHECK(encloses(mills::second_order_root(2, at("0"), RootSign::kPlus, kPrec),
                 "1.1547005383792515290182975610039149112952035025403"));
  // A_1(1) = 0.
  CHECK_THROWS_AS(mills::second_order_root(1, at("1"), RootSign::kMinus, kPrec), mills::SingularityError);
}

TEST_CASE("second-order bound examples") {
  const auto i2 = mills::second_order_bound(2, at("1"), kPrec);
  CHECK(i2.role == mills::Role::kLower);
  CHECK(encloses(i2.value, "0.65138781886599732327980531686762398656282414346131"));
  const auto i1 = mills::second_order_bound(1, at("2"), kPrec);
  CHECK(i1.role == mills::Role::kUpper);
  CHECK(encloses(i1.value, "0.42264973081037423549085121949804254435239824872987"));
  // At x = beta_0 = 1 the odd bound takes its continuity value.
  CHECK(equals_rational(mills::second_order_bound(1, at("1"), kPrec).value, BigRational(2, 3)));
}

TEST_CASE("order 3 reproduces its closed form") {
  for (const char* xs : {"-0.8", "-0.5", "0", "0.5", "0.8713", "1", "2", "7", "10"}) {
    CAPTURE(xs);
    const PrecReal x = at(xs);
    const PrecReal x2 = x * x;
    const PrecReal numerator = x2 * x2 + x2 + PrecReal(16L, kPrec);
    const PrecReal denominator = x * (x2 * x2 + PrecReal(2L, kPrec) * x2 + PrecReal(12L, kPrec)) +
                                 PrecReal(3L, kPrec) * sqrt(x2 + PrecReal(16L, kPrec));
    const PrecReal expected = numerator / denominator;
    CHECK(mills::ulp_distance(mills::second_order_bound(3, x, kPrec).value.value(), expected, kPrec) <=
          PrecReal(8L, 64));
  }
}

TEST_CASE("orders 0 and 1 reproduce the classical bounds") {
  for (int k = -100; k <= 100; ++k) {
    const PrecReal x(BigRational(k, 10), kPrec);
    CAPTURE(k);
    CHECK(mills::ulp_distance(mills::second_order_bound(0, x, kPrec).value.value(),
                              mills::komatsu_lower(x, kPrec).value(), kPrec) <= PrecReal(4L, 64));
    if (k > -10) {
      CHECK(mills::ulp_distance(mills::second_order_bound(1, x, kPrec).value.value(),
                                mills::szarek_werner_upper(x, kPrec).value(), kPrec) <= PrecReal(4L, 64));
    }
  }
}

TEST_CASE("odd-order domain") {
  CHECK_NOTHROW(mills::second_order_bound(3, at("-0.87"), kPrec));
  CHECK_THROWS_AS(mills::second_order_bound(3, at("-0.872"), kPrec), mills::DomainError);
  CHECK_THROWS_AS(mills::second_order_bound(1, at("-1"), kPrec), mills::DomainError);
  CHECK_NOTHROW(mills::second_order_bound(2, at("-30"), kPrec));
  CHECK(mills::in_domain(Family::kSecondOrder, 3, BigRational(-87, 100)));
  CHECK(!mills::in_domain(Family::kSecondOrder, 3, BigRational(-872, 1000)));
  CHECK(mills::in_domain(Family::kSecondOrder, 2, BigRational(-30)));
  CHECK(!mills::in_domain(Family::kSecondOrder, 2, BigRational(-31)));
  CHECK(!mills::in_domain(Family::kRationalEnclosure, 0, BigRational(0)));
  CHECK(mills::in_domain(Family::kSzarekWerner, 1, BigRational(-99, 100)));
  CHECK(!mills::in_domain(Family::kSzarekWerner, 1, BigRational(-1)));
}

TEST_CASE("beta roots") {
  const auto b0 = mills::beta(0);
  CHECK(b0.low == 1);
  CHECK(b0.high == 1);
  CHECK(b0.value == PrecReal(1L, 64));
  const auto b1 = mills::beta(1);
  CHECK(abs(b1.value - real("0.871338")) <= real("5e-6"));
  CHECK(abs(b1.value - real("0.87133791357015929334834")) <= real("1e-12"));
  CHECK(b1.high - b1.low < mills::default_beta_tolerance());
  for (std::size_t m = 1; m <= 5; ++m) {
    const auto b = mills::beta(m);
    const auto& a = mills::quadratic_triple(2 * m + 1).a;
    CHECK(sgn(evaluate(a, b.low)) < 0);
    CHECK(sgn(evaluate(a, b.high)) > 0);
    CHECK(b.value.sign() > 0);
    CHECK(b.value <= PrecReal(1L, 64));
    CHECK(PrecReal(b.low, 256) <= b.value);
    CHECK(b.value <= PrecReal(b.high, 256));
  }
  const auto coarse = mills::beta(1, BigRational(1, 100));
  CHECK(coarse.high - coarse.low < BigRational(1, 100));
  CHECK_THROWS_AS(mills::beta(1, BigRational(0)), mills::DomainError);
}

TEST_CASE("log-convexity examples") {
  CHECK(encloses(mills::log_convexity_check(0, at("0"), kPrec), "0.57079632679489661923132169163975144209858469968755"));
  CHECK(encloses(mills::log_convexity_check(1, at("0"), kPrec), "0.42920367320510338076867830836024855790141530031245"));
  CHECK(mills::log_convexity_check(3, at("1"), kPrec).certainly_positive());
}

TEST_CASE("certify_grid examples") {
  const auto eq15 = mills::certify_grid(Family::kRationalEnclosure, {1}, {BigRational(1)}, kPrec);
  REQUIRE(eq15.size() == 1);
  CHECK(eq15[0].family == "Eq15");
  CHECK(eq15[0].pass);
  CHECK(eq15[0].precision_bits == kPrec);
  const auto i2 = mills::certify_grid(Family::kSecondOrder, {2}, {BigRational(0)}, kPrec);
  REQUIRE(i2.size() == 1);
  CHECK(i2[0].family == "I_2");
  CHECK(i2[0].pass);
  const auto eq18 = mills::certify_grid(Family::kKomatsu, {}, {BigRational(0)}, kPrec);
  REQUIRE(eq18.size() == 1);
  CHECK(eq18[0].family == "Eq18");
  CHECK(eq18[0].pass);
  // 1 < sqrt(pi/2)
  CHECK(encloses(eq18[0].margin, "0.25331413731550025120788264240552262650349337030497"));
}

TEST_CASE("certificates are sorted and include the sharper chain for x > 0") {
  const std::vector<BigRational> xs{BigRational(3), BigRational(-1, 2), BigRational(1, 10), BigRational(0)};
  const auto certificates = mills::certify_grid(Family::kSecondOrder, {3, 2}, xs, kPrec);
  CHECK(certificates.size() == 2 * 4 + 2 * 2);
  std::vector<std::string> families;
  for (const auto& c : certificates) {
    CHECK(c.pass);
    families.push_back(c.family + ":" + std::to_string(c.n) + ":" + mills::to_string(c.x));
  }
  CHECK(families.front() == "I_2:2:-1/2");
  CHECK(families.back() == "I_3_sharper:3:3");
  CHECK(std::is_sorted(certificates.begin(), certificates.begin() + 4,
                       [](const auto& a, const auto& b) { return a.x < b.x; }));
}

TEST_CASE("certify_grid rejects points outside the domain") {
  CHECK_THROWS_AS(mills::certify_grid(Family::kRationalEnclosure, {1}, {BigRational(0)}, kPrec), mills::DomainError);
  CHECK_THROWS_AS(mills::certify_grid(Family::kSzarekWerner, {}, {BigRational(-1)}, kPrec), mills::DomainError);
  CHECK_THROWS_AS(mills::certify_grid(Family::kSecondOrder, {3}, {BigRational(-9, 10)}, kPrec), mills::DomainError);
}

TEST_CASE("a corrupted table produces failing certificates") {
  const auto table = mills::PolynomialTable::with_corruption(3);
  std::vector<BigRational> xs;
  for (int k = 1; k <= 20; ++k) xs.emplace_back(k, 4);
  const auto certificates = mills::certify_grid(Family::kConvergentError, {3, 4, 5}, xs, kPrec, *table);
  CHECK(std::any_of(certificates.begin(), certificates.end(), [](const auto& c) { return !c.pass; }));
  const auto clean = mills::certify_grid(Family::kConvergentError, {3, 4, 5}, xs, kPrec);
  CHECK(std::all_of(clean.begin(), clean.end(), [](const auto& c) { return c.pass; }));
}

TEST_CASE("family names") {
  std::size_t order = 99;
  CHECK(mills::parse_family("eq15", &order) == Family::kRationalEnclosure);
  CHECK(order == 99);
  CHECK(mills::parse_family("i2", &order) == Family::kSecondOrder);
  CHECK(order == 2);
  CHECK(mills::parse_family("I_13", &order) == Family::kSecondOrder);
  CHECK(order == 13);
  CHECK(mills::parse_family("eq19", &order) == Family::kSzarekWerner);
  CHECK(order == 1);
  CHECK(mills::parse_family("sign", &order) == Family::kDerivativeSign);
  CHECK_THROWS_AS(mills::parse_family("eq20", &order), mills::DomainError);
  CHECK_THROWS_AS(mills::parse_family("ix", &order), mills::DomainError);
  CHECK(mills::family_name(Family::kSecondOrder, 3) == "I_3");
  CHECK(mills::family_name(Family::kSecondOrderSharper, 4) == "I_4_sharper");
  CHECK(mills::family_name(Family::kErrorDecrease, 0) == "Eq16_decreasing");
}
