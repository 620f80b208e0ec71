#include <doctest.h>

#include "mills/report.hpp"

using mills::ApproxReal;
using mills::BigRational;
using mills::Certificate;
using mills::PrecReal;

namespace {

Certificate sample(const std::string& family, bool pass) {
  return {family, 3, BigRational(7, 3), ApproxReal::exact(PrecReal(BigRational(1, 8), 128)), 128, pass};
}

}  // namespace

TEST_CASE("CSV quoting follows RFC 4180") {
  CHECK(mills::csv_field("plain") == "plain");
  CHECK(mills::csv_field("a,b") == "\"a,b\"");
  CHECK(mills::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(mills::csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(mills::csv_field("") == "");
}

TEST_CASE("certificate JSON has a fixed key order") {
  const auto j = mills::to_json(sample("I_3", true));
  CHECK(j.dump() ==
        R"({"family":"I_3","n":3,"x":"7/3","margin":"0.125","precision_bits":128,"verdict":"pass"})");
  CHECK(mills::to_json(sample("Eq15", false))["verdict"] == "fail");
}

TEST_CASE("certificate CSV mirrors the JSON columns") {
  const std::string csv = mills::certificates_csv({sample("Eq15", true), sample("a,b", false)});
  CHECK(csv ==
        "family,n,x,margin,precision_bits,verdict\r\n"
        "Eq15,3,7/3,0.125,128,pass\r\n"
        "\"a,b\",3,7/3,0.125,128,fail\r\n");
}

TEST_CASE("identity reports") {
  const std::vector<mills::IdentityCheck> checks{{"discriminant", 4, true}, {"determinant_1", 2, false}};
  CHECK(mills::to_json(checks).dump() ==
        R"([{"identity":"discriminant","n":4,"status":"pass"},{"identity":"determinant_1","n":2,"status":"fail"}])");
  CHECK(mills::identities_csv(checks) == "identity,n,status\r\ndiscriminant,4,pass\r\ndeterminant_1,2,fail\r\n");
}
