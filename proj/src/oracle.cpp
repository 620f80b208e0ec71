#include "mills/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "mills/int_polynomial.hpp"
#include "mills/mills_polynomials.hpp"

namespace mills {

std::string_view to_string(OracleMethod method) {
  return method == OracleMethod::kSeries ? "series" : "quadrature";
}

namespace {

using error_arith::add;
using error_arith::magnitude;
using error_arith::mul;

void check_envelope(const PrecReal& x) {
  if (!x.is_finite() || std::fabs(x.to_double()) > kOracleEnvelope) {
    throw DomainError("oracle is limited to |x| <= 30");
  }
}

PrecReal small_count(double count) {
  return PrecReal::from_double(std::ceil(count), kMinPrecision);
}

// u = 2^-p
PrecReal unit_roundoff(Precision p) { return PrecReal::power_of_two(-p); }

OracleValue finish(PrecReal value, PrecReal error, OracleMethod method, Precision precision) {
  ApproxReal rounded = ApproxReal(std::move(value), std::move(error)).rounded(precision);
  return {rounded.value(), rounded.error(), method};
}

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<PrecReal> nodes;
  std::vector<PrecReal> weights;
};

// Legendre P_n(t) and P_{n-1}(t) by the three-term recurrence.
std::pair<PrecReal, PrecReal> legendre(std::size_t n, const PrecReal& t, Precision wp) {
  PrecReal previous(1L, wp);
  PrecReal current = t.rounded(wp);
  for (std::size_t k = 1; k < n; ++k) {
    const PrecReal kk(static_cast<long>(k), wp);
    PrecReal next = (PrecReal(static_cast<long>(2 * k + 1), wp) * t * current - kk * previous) /
                    PrecReal(static_cast<long>(k + 1), wp);
    previous = std::move(current);
    current = std::move(next);
  }
  return {current, previous};
}

GaussRule compute_rule(std::size_t n, Precision wp) {
  GaussRule rule;
  rule.nodes.resize(n, PrecReal(wp));
  rule.weights.resize(n, PrecReal(wp));
  const PrecReal one(1L, wp);
  const PrecReal nn(static_cast<long>(n), wp);
  const PrecReal tolerance = PrecReal::power_of_two(8 - wp);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    const double guess = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    PrecReal t = PrecReal::from_double(guess, wp);
    PrecReal slope(wp);
    for (int iteration = 0; iteration < 200; ++iteration) {
      auto [pn, pn1] = legendre(n, t, wp);
      slope = nn * (t * pn - pn1) / (t * t - one);
      const PrecReal step = pn / slope;
      t = t - step;
      if (abs(step) <= tolerance) break;
    }
    auto [pn, pn1] = legendre(n, t, wp);
    slope = nn * (t * pn - pn1) / (t * t - one);
    PrecReal weight = PrecReal(2L, wp) / ((one - t * t) * slope * slope);
    rule.nodes[i] = t;
    rule.weights[i] = weight;
    rule.nodes[n - 1 - i] = -t;
    rule.weights[n - 1 - i] = weight;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = PrecReal(wp);
  return rule;
}

const GaussRule& gauss_rule(std::size_t n, Precision wp) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, Precision>, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, wp}];
  if (!slot) slot = std::make_unique<GaussRule>(compute_rule(n, wp));
  return *slot;
}

// log of the Gauss-Legendre error bound summed over all panels, for an
// n-point rule on panels of half-width h covering [0, 2 h panels]. Uses
// |E| <= h (64/15) M rho^(-2n) / (rho^2 - 1), M the integrand's maximum on
// the Bernstein ellipse E_rho mapped onto the panel.
constexpr double kRho = 4.0;

double log_quadrature_bound(double x, double h, std::size_t panels, std::size_t n) {
  const double alpha = (kRho + 1.0 / kRho) / 2.0;
  const double beta = (kRho - 1.0 / kRho) / 2.0;
  double log_total = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < panels; ++j) {
    const double c = (2.0 * static_cast<double>(j) + 1.0) * h;
    const double lo = c - h * alpha;
    const double hi = c + h * alpha;
    const double u = std::clamp(-x, lo, hi);
    // Re(-x z - z^2/2) <= -x u - u^2/2 + (Im z)^2/2 on the ellipse.
    const double log_m = -x * u - u * u / 2.0 + h * h * beta * beta / 2.0;
    const double log_panel = std::log(h * 64.0 / 15.0 / (kRho * kRho - 1.0)) + log_m;
    const double hi_log = std::max(log_total, log_panel);
    log_total = hi_log + std::log(std::exp(log_total - hi_log) + std::exp(log_panel - hi_log));
  }
  return log_total - 2.0 * static_cast<double>(n) * std::log(kRho) + 1e-6 * std::fabs(log_total) + 1e-9;
}

}  // namespace

OracleValue phi_series(const PrecReal& x, Precision precision) {
  check_envelope(x);
  if (precision < kMinPrecision) throw std::invalid_argument("precision must be at least 64 bits");
  const double xd = x.to_double();
  const double guard = xd > 0 ? std::ceil(xd * xd * std::numbers::log2e) + 64 : 64;
  const Precision wp = std::max(precision + static_cast<Precision>(guard) + 16, x.precision());
  const PrecReal xw = x.rounded(wp);
  const PrecReal x2 = xw * xw;
  const PrecReal head = sqrt(PrecReal::pi(wp) / PrecReal(2L, wp)) * exp(ldexp(x2, -1));

  // sum_{k>=0} x^(2k+1) / (2k+1)!!; every term has the sign of x.
  PrecReal term = xw;
  PrecReal sum = xw;
  const PrecReal half(PrecReal::power_of_two(-1));
  const PrecReal threshold_scale = PrecReal::power_of_two(-wp);
  std::size_t k = 0;
  PrecReal tail_bound(kMinPrecision);
  if (!xw.is_zero()) {
    for (;;) {
      const PrecReal ratio = x2 / PrecReal(static_cast<long>(2 * k + 3), wp);
      term = term * ratio;
      if (ratio <= half && abs(term) <= abs(sum) * threshold_scale) {
        // Remaining terms shrink by at least the ratio each step.
        tail_bound = mul(magnitude(term), PrecReal::from_double(2.01, kMinPrecision));
        break;
      }
      sum = sum + term;
      ++k;
    }
  }
  const PrecReal value = head - sum;

  const PrecReal u = unit_roundoff(wp);
  // head: x^2 rounding amplified by exp, plus exp, pi, division, sqrt, product.
  PrecReal error = mul(mul(add(ldexp(magnitude(x2), -1), small_count(8)), u), magnitude(head));
  // sum: 4k roundings accumulate in term k, k more in the running sum.
  error = add(error, mul(mul(small_count(5.0 * static_cast<double>(k) + 2), u), magnitude(sum)));
  error = add(error, tail_bound);
  error = add(error, mul(mul(small_count(2), u), magnitude(value)));
  return finish(value, error, OracleMethod::kSeries, precision);
}

OracleValue phi_quadrature(const PrecReal& x, Precision precision) {
  check_envelope(x);
  if (precision < kMinPrecision) throw std::invalid_argument("precision must be at least 64 bits");
  const double xd = x.to_double();
  const double ln_target = static_cast<double>(precision + 16) * std::numbers::ln2;
  // x T + T^2/2 = ln_target
  const double cutoff = -xd + std::sqrt(xd * xd + 2.0 * ln_target);
  const double alpha = (kRho + 1.0 / kRho) / 2.0;
  const double span = std::fabs(xd) + cutoff + 1.0;
  const std::size_t panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(cutoff * alpha * span / 32.0)));
  const double h_d = cutoff / (2.0 * static_cast<double>(panels));

  // Integrand maximum and a crude scale for the relative target.
  const double peak_t = std::clamp(-xd, 0.0, cutoff);
  const double log_peak = -xd * peak_t - peak_t * peak_t / 2.0;
  const double log_scale = log_peak - std::log(span + 1.0);
  const double bits_needed = static_cast<double>(precision + 16) + (log_peak - log_scale) * std::numbers::log2e;
  std::size_t nodes = std::max<std::size_t>(16, static_cast<std::size_t>(bits_needed / (2.0 * std::log2(kRho))));
  while ((log_quadrature_bound(xd, h_d, panels, nodes) - log_scale) * std::numbers::log2e >
         -static_cast<double>(precision + 16)) {
    nodes += std::max<std::size_t>(4, nodes / 8);
  }

  const double log_cost = 6.0 * (std::fabs(xd) * cutoff + cutoff * cutoff) + 8.0;
  const Precision wp = std::max(precision + 32 + static_cast<Precision>(std::log2(log_cost + 1.0)) +
                                    static_cast<Precision>(std::log2(static_cast<double>(panels * nodes) + 1.0)),
                                x.precision());

  for (;;) {
    const GaussRule& rule = gauss_rule(nodes, wp);
    const PrecReal xw = x.rounded(wp);
    const PrecReal t_cut = PrecReal::from_double(cutoff, wp);
    const PrecReal h = t_cut / PrecReal(static_cast<long>(2 * panels), wp);
    PrecReal total(wp);
    for (std::size_t j = 0; j < panels; ++j) {
      const PrecReal center = h * PrecReal(static_cast<long>(2 * j + 1), wp);
      PrecReal panel(wp);
      for (std::size_t i = 0; i < nodes; ++i) {
        const PrecReal t = center + h * rule.nodes[i];
        const PrecReal exponent = -(t * (xw + ldexp(t, -1)));
        panel = panel + rule.weights[i] * exp(exponent);
      }
      total = total + h * panel;
    }

    // Tail beyond T, with the conservative factor max(1, 1/(x+T)).
    const PrecReal tail_exponent = -(t_cut * (xw + ldexp(t_cut, -1)));
    PrecReal tail = exp(tail_exponent);
    const PrecReal reach = xw + t_cut;
    if (reach < PrecReal(1L, wp)) tail = tail / reach;
    PrecReal error = mul(magnitude(tail), PrecReal::from_double(1.01, kMinPrecision));

    const double log2_bound = log_quadrature_bound(xd, h_d, panels, nodes) * std::numbers::log2e + 1.0;
    const PrecReal quadrature_bound = PrecReal::power_of_two(static_cast<long>(std::ceil(log2_bound)));
    error = add(error, quadrature_bound);

    // Rounding: node/weight error (a few ulps plus n u in the weights),
    // argument error amplified through exp, and recursive summation.
    const double count = 2.0 * (log_cost + 4.0 * static_cast<double>(nodes) +
                                 static_cast<double>(panels * nodes) + 16.0);
    error = add(error, mul(mul(small_count(count), unit_roundoff(wp)), magnitude(total)));

    // Accept when the bound meets the target relative to the computed value.
    const PrecReal target = mul(magnitude(total), PrecReal::power_of_two(-(precision + 8)));
    if (error <= target || nodes > 4096) {
      return finish(total, error, OracleMethod::kQuadrature, precision);
    }
    nodes += nodes / 2;
  }
}

ApproxReal phi_derivative(std::size_t n, const PrecReal& x, Precision precision, const PolynomialTable& table) {
  const Precision wp = precision + 64;
  const ApproxReal phi = phi_series(x, wp).approx();
  const PQPair& pair = table.pq_pair(n);
  const ApproxReal value = evaluate(pair.p, x, wp) * phi - evaluate(pair.q, x, wp);
  return value.rounded(precision);
}

}  // namespace mills
