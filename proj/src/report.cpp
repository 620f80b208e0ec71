#include "mills/report.hpp"

namespace mills {

namespace {

const char* verdict(bool pass) { return pass ? "pass" : "fail"; }

}  // namespace

Json to_json(const IdentityCheck& check) {
  Json j;
  j["identity"] = check.identity;
  j["n"] = check.n;
  j["status"] = verdict(check.pass);
  return j;
}

Json to_json(const std::vector<IdentityCheck>& checks) {
  Json j = Json::array();
  for (const auto& c : checks) j.push_back(to_json(c));
  return j;
}

Json to_json(const Certificate& certificate, int digits) {
  Json j;
  j["family"] = certificate.family;
  j["n"] = certificate.n;
  j["x"] = to_string(certificate.x);
  j["margin"] = certificate.margin.value().to_decimal(digits);
  j["precision_bits"] = certificate.precision_bits;
  j["verdict"] = verdict(certificate.pass);
  return j;
}

Json to_json(const std::vector<Certificate>& certificates, int digits) {
  Json j = Json::array();
  for (const auto& c : certificates) j.push_back(to_json(c, digits));
  return j;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string identities_csv(const std::vector<IdentityCheck>& checks) {
  std::string out = "identity,n,status\r\n";
  for (const auto& c : checks) {
    out += csv_field(c.identity) + "," + std::to_string(c.n) + "," + verdict(c.pass) + "\r\n";
  }
  return out;
}

std::string certificates_csv(const std::vector<Certificate>& certificates, int digits) {
  std::string out = "family,n,x,margin,precision_bits,verdict\r\n";
  for (const auto& c : certificates) {
    out += csv_field(c.family) + "," + std::to_string(c.n) + "," + csv_field(to_string(c.x)) + "," +
           csv_field(c.margin.value().to_decimal(digits)) + "," + std::to_string(c.precision_bits) + "," +
           verdict(c.pass) + "\r\n";
  }
  return out;
}

}  // namespace mills
