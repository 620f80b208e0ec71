#pragma once

// Reference evaluators for the Mills ratio
//   phi(x) = e^(x^2/2) int_x^inf e^(-t^2/2) dt
// used as ground truth by the certification code. The two routes share
// nothing beyond MPFR's elementary functions, and neither touches the
// continued fraction or any of the rational/square-root bounds.
//
// Error bounds are forward estimates (not interval arithmetic): truncation
// terms are bounded analytically, rounding is bounded by counting
// operations at the working precision.

#include <cstddef>
#include <string_view>

#include "mills/mills_polynomials.hpp"
#include "mills/prec_real.hpp"

namespace mills {

inline constexpr double kOracleEnvelope = 30.0;

enum class OracleMethod { kSeries, kQuadrature };

std::string_view to_string(OracleMethod method);

struct OracleValue {
  PrecReal value;
  PrecReal error_bound;  // |value - phi(x)| <= error_bound
  OracleMethod method = OracleMethod::kSeries;

  ApproxReal approx() const { return ApproxReal(value, error_bound); }
};

// phi(x) = sqrt(pi/2) e^(x^2/2) - sum_{k>=0} x^(2k+1) / (2k+1)!!,
// i.e. e^(x^2/2) sqrt(pi/2) erfc(x/sqrt(2)) with e^(z^2) erf(z) expanded as
// its all-positive Maclaurin series. For x > 0 the two terms cancel to
// about x^2/2 * log2(e) bits, so the working precision is raised by
// x^2 * log2(e) + 64 bits. error_bound <= 2^(8 - precision) * phi(x).
// Throws DomainError for |x| > 30.
OracleValue phi_series(const PrecReal& x, Precision precision);

// phi(x) = int_0^inf e^(-x t - t^2/2) dt, truncated at T with
// x T + T^2/2 = (precision + 16) ln 2 (tail <= e^(-x T - T^2/2) / (x + T)),
// then composite Gauss-Legendre on [0, T]. Each panel's error is bounded
// through the integrand's maximum on a Bernstein ellipse; the node count is
// raised until the total bound meets the precision target.
// Throws DomainError for |x| > 30.
OracleValue phi_quadrature(const PrecReal& x, Precision precision);

// phi^(n)(x) = P_n(x) phi(x) - Q_n(x), with the error of the series oracle
// propagated through |P_n(x)|. Evaluated with 64 guard bits, returned at
// the requested precision.
ApproxReal phi_derivative(std::size_t n, const PrecReal& x, Precision precision,
                          const PolynomialTable& table = default_table());

}  // namespace mills
