#pragma once

// Serialization of identity checks and certificates: JSON with a fixed key
// order and a CSV mirror (header row, RFC 4180 quoting).

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mills/bounds.hpp"
#include "mills/mills_polynomials.hpp"

namespace mills {

inline constexpr std::string_view kToolName = "mills";
inline constexpr std::string_view kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// {"identity", "n", "status"}
Json to_json(const IdentityCheck& check);
Json to_json(const std::vector<IdentityCheck>& checks);

// {"family", "n", "x", "margin", "precision_bits", "verdict"}; x is the
// exact rational, margin a decimal with the given significant digits.
Json to_json(const Certificate& certificate, int digits = 20);
Json to_json(const std::vector<Certificate>& certificates, int digits = 20);

// Quotes a field when it holds a comma, quote, CR or LF; quotes are doubled.
std::string csv_field(std::string_view text);

std::string identities_csv(const std::vector<IdentityCheck>& checks);
std::string certificates_csv(const std::vector<Certificate>& certificates, int digits = 20);

}  // namespace mills
