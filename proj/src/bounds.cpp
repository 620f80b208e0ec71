#include "mills/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <future>
#include <mutex>
#include <shared_mutex>
#include <thread>
#include <tuple>
#include <utility>

#include "mills/int_polynomial.hpp"
#include "mills/mills_polynomials.hpp"
#include "mills/oracle.hpp"

namespace mills {

namespace {

constexpr Precision kGuardBits = 32;

const QuadraticTriple& cached_triple(std::size_t n) {
  static std::shared_mutex mutex;
  static std::deque<QuadraticTriple> table;
  {
    std::shared_lock lock(mutex);
    if (n < table.size()) return table[n];
  }
  std::unique_lock lock(mutex);
  while (table.size() <= n) table.push_back(quadratic_triple(table.size()));
  return table[n];
}

// Triples of the default table are cached; other tables are recomputed.
QuadraticTriple triple_for(std::size_t n, const PolynomialTable& table) {
  if (&table == &default_table()) return cached_triple(n);
  return quadratic_triple(n, table);
}

void require_positive(const PrecReal& x) {
  if (x.sign() <= 0) {
    throw DomainError("x must be positive");
  }
}

ApproxReal exact_real(const PrecReal& x) { return ApproxReal::exact(x); }

ApproxReal constant(long value, Precision wp) { return ApproxReal::exact(PrecReal(value, wp)); }

// sqrt(x^2 + k) with x exact.
ApproxReal shifted_root(const PrecReal& x, long k, Precision wp) {
  const ApproxReal xw = exact_real(x);
  return sqrt(xw * xw + constant(k, wp));
}

struct TripleValues {
  ApproxReal a;
  ApproxReal b;
  ApproxReal c;
  ApproxReal root;  // n! sqrt(x^2 + 4n + 4)
};

TripleValues triple_at(const QuadraticTriple& t, const PrecReal& x, Precision wp) {
  const std::size_t n = t.n;
  ApproxReal root = ApproxReal::from(factorial(n), wp) * shifted_root(x, static_cast<long>(4 * n + 4), wp);
  return {evaluate(t.a, x, wp), evaluate(t.b, x, wp), evaluate(t.c, x, wp), std::move(root)};
}

}  // namespace

std::string family_name(Family family, std::size_t n) {
  switch (family) {
    case Family::kRationalEnclosure: return "Eq15";
    case Family::kConvergentError: return "Eq16";
    case Family::kErrorDecrease: return "Eq16_decreasing";
    case Family::kLogConvexity: return "Eq17";
    case Family::kKomatsu: return "Eq18";
    case Family::kSzarekWerner: return "Eq19";
    case Family::kSecondOrder: return "I_" + std::to_string(n);
    case Family::kSecondOrderSharper: return "I_" + std::to_string(n) + "_sharper";
    case Family::kDerivativeSign: return "Deriv_sign";
  }
  return "unknown";
}

Family parse_family(const std::string& text, std::size_t* order) {
  std::string key;
  for (char c : text) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key == "eq15") return Family::kRationalEnclosure;
  if (key == "eq16") return Family::kConvergentError;
  if (key == "eq16_decreasing") return Family::kErrorDecrease;
  if (key == "eq17") return Family::kLogConvexity;
  if (key == "eq18") {
    if (order) *order = 0;
    return Family::kKomatsu;
  }
  if (key == "eq19") {
    if (order) *order = 1;
    return Family::kSzarekWerner;
  }
  if (key == "sign" || key == "deriv_sign") return Family::kDerivativeSign;
  if (!key.empty() && key[0] == 'i') {
    std::string digits = key.substr(1);
    if (!digits.empty() && digits[0] == '_') digits.erase(0, 1);
    if (digits.empty()) return Family::kSecondOrder;
    if (std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      if (order) *order = std::stoul(digits);
      return Family::kSecondOrder;
    }
  }
  throw DomainError("unknown family '" + text + "'");
}

ApproxReal convergent_value(std::size_t n, const PrecReal& x, Precision precision, const PolynomialTable& table) {
  const Precision wp = precision + kGuardBits;
  const PQPair& pair = table.pq_pair(n);
  return (evaluate(pair.q, x, wp) / evaluate(pair.p, x, wp)).rounded(precision);
}

Enclosure first_order_enclosure(std::size_t n, const PrecReal& x, Precision precision, const PolynomialTable& table) {
  require_positive(x);
  return {x,
          convergent_value(2 * n, x, precision, table),
          convergent_value(2 * n + 1, x, precision, table),
          {"Eq15", 2 * n},
          {"Eq15", 2 * n + 1},
          precision};
}

ApproxReal first_order_error_bound(std::size_t n, const PrecReal& x, Precision precision,
                                   const PolynomialTable& table) {
  require_positive(x);
  const Precision wp = precision + kGuardBits;
  const ApproxReal denominator = evaluate(table.pq_pair(n).p, x, wp) * evaluate(table.pq_pair(n + 1).p, x, wp);
  return (ApproxReal::from(factorial(n), wp) / denominator).rounded(precision);
}

ApproxReal komatsu_lower(const PrecReal& x, Precision precision) {
  const Precision wp = precision + kGuardBits;
  const ApproxReal root = shifted_root(x, 4, wp);
  const ApproxReal xw = exact_real(x);
  // 2/(x + s) = (s - x)/2; use the form without cancellation.
  ApproxReal value = x.sign() >= 0 ? constant(2, wp) / (xw + root) : (root - xw) / constant(2, wp);
  return value.rounded(precision);
}

ApproxReal szarek_werner_upper(const PrecReal& x, Precision precision) {
  if (!(x > PrecReal(-1L, kMinPrecision))) {
    throw DomainError("x must exceed -1");
  }
  const Precision wp = precision + kGuardBits;
  const ApproxReal root = shifted_root(x, 8, wp);
  const ApproxReal three_x = constant(3, wp) * exact_real(x);
  if (x.sign() >= 0) return (constant(4, wp) / (three_x + root)).rounded(precision);
  // 4/(3x + s) = (3x - s) / (2 (x - 1)(x + 1))
  const ApproxReal xw = exact_real(x);
  const ApproxReal denominator = constant(2, wp) * (xw - constant(1, wp)) * (xw + constant(1, wp));
  return ((three_x - root) / denominator).rounded(precision);
}

ApproxReal second_order_root(std::size_t n, const PrecReal& x, RootSign sign, Precision precision,
                             const PolynomialTable& table) {
  const Precision wp = precision + kGuardBits;
  const TripleValues v = triple_at(triple_for(n, table), x, wp);
  if (v.a.certain_sign() == 0) {
    throw SingularityError("A_" + std::to_string(n) + "(x) vanishes at working precision");
  }
  const ApproxReal numerator = sign == RootSign::kPlus ? v.b + v.root : v.b - v.root;
  return (numerator / (constant(2, wp) * v.a)).rounded(precision);
}

BoundValue second_order_bound(std::size_t n, const PrecReal& x, Precision precision, const PolynomialTable& table) {
  const bool odd = n % 2 == 1;
  if (odd && x.sign() <= 0) {
    // On x <= 0, x > -beta_m exactly when A_n(x) < 0.
    const BigRational exact_x = x.to_rational();
    if (sgn(evaluate(triple_for(n, table).a, exact_x)) >= 0) {
      throw DomainError("x must exceed -beta_" + std::to_string(n / 2));
    }
  }
  const Precision wp = precision + kGuardBits;
  const TripleValues v = triple_at(triple_for(n, table), x, wp);
  const ApproxReal two = constant(2, wp);
  const bool b_non_negative = v.b.value().sign() >= 0;
  ApproxReal value = exact_real(PrecReal(wp));
  if (!odd) {
    // Z+ = (B + s)/(2A) = 2C/(B - s)
    value = b_non_negative ? (v.b + v.root) / (two * v.a) : (two * v.c) / (v.b - v.root);
  } else {
    // Z- = (B - s)/(2A) = 2C/(B + s)
    value = b_non_negative ? (two * v.c) / (v.b + v.root) : (v.b - v.root) / (two * v.a);
  }
  return {value.rounded(precision), odd ? Role::kUpper : Role::kLower};
}

BigRational default_beta_tolerance() {
  BigInt denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 2, 40);
  return make_rational(1, denominator);
}

BetaRoot beta(std::size_t m, const BigRational& tolerance) {
  if (sgn(tolerance) <= 0) {
    throw DomainError("tolerance must be positive");
  }
  const IntPolynomial& a = cached_triple(2 * m + 1).a;
  BigRational low = 0;
  BigRational high = 1;
  if (sgn(evaluate(a, low)) >= 0 || sgn(evaluate(a, high)) < 0) {
    throw IdentityViolation("A_" + std::to_string(2 * m + 1) + " does not change sign on (0, 1]");
  }
  if (sgn(evaluate(a, high)) == 0) {
    low = high;
  } else {
    while (high - low >= tolerance) {
      BigRational middle = (low + high) / 2;
      const int s = sgn(evaluate(a, middle));
      if (s == 0) {
        low = high = middle;
        break;
      }
      (s < 0 ? low : high) = std::move(middle);
    }
  }
  const double digits = -std::log2(tolerance.get_d());
  const Precision precision = std::max<Precision>(kDefaultPrecision, static_cast<Precision>(digits) + 64);
  return {m, PrecReal(BigRational((low + high) / 2), precision), low, high};
}

ApproxReal log_convexity_check(std::size_t n, const PrecReal& x, Precision precision, const PolynomialTable& table) {
  Precision wp = precision + 64;
  const QuadraticTriple t = triple_for(n, table);
  for (int attempt = 0;; ++attempt) {
    const ApproxReal phi = phi_series(x, wp).approx();
    const ApproxReal value =
        (evaluate(t.a, x, wp) * phi - evaluate(t.b, x, wp)) * phi + evaluate(t.c, x, wp);
    if (value.certain_sign() != 0 || attempt == 4) return value.rounded(precision);
    wp *= 2;
  }
}

bool in_domain(Family family, std::size_t n, const BigRational& x) {
  if (abs(x) > kOracleEnvelope) return false;
  switch (family) {
    case Family::kRationalEnclosure:
    case Family::kConvergentError:
    case Family::kErrorDecrease:
      return sgn(x) > 0;
    case Family::kSzarekWerner:
      return x > -1;
    case Family::kSecondOrder:
    case Family::kSecondOrderSharper:
      if (n % 2 == 0 || sgn(x) > 0) return true;
      return sgn(evaluate(cached_triple(n).a, x)) < 0;
    case Family::kLogConvexity:
    case Family::kKomatsu:
    case Family::kDerivativeSign:
      return true;
  }
  return false;
}

namespace {

struct Keyed {
  Family family;
  Certificate certificate;
};

Certificate make_certificate(Family family, std::size_t n, const BigRational& x, ApproxReal margin,
                             Precision precision, bool pass) {
  return {family_name(family, n), n, x, std::move(margin), precision, pass};
}

Certificate single(Family family, std::size_t n, const BigRational& x, ApproxReal margin, Precision precision) {
  const bool pass = margin.certainly_positive();
  return make_certificate(family, n, x, std::move(margin), precision, pass);
}

std::vector<Keyed> certify_point(Family family, const std::vector<std::size_t>& orders, const BigRational& xr,
                                 Precision reported, const PolynomialTable& table) {
  const Precision precision = reported + kGuardBits;
  const PrecReal x(xr, precision);
  const ApproxReal phi = phi_series(x, precision).approx();
  std::vector<Keyed> out;
  auto emit = [&out](Family f, Certificate c) { out.push_back({f, std::move(c)}); };

  switch (family) {
    case Family::kKomatsu:
      emit(family, single(family, 0, xr, phi - komatsu_lower(x, precision), reported));
      return out;
    case Family::kSzarekWerner:
      emit(family, single(family, 1, xr, szarek_werner_upper(x, precision) - phi, reported));
      return out;
    default:
      break;
  }

  for (std::size_t n : orders) {
    switch (family) {
      case Family::kRationalEnclosure: {
        const Enclosure e = first_order_enclosure(n, x, precision, table);
        ApproxReal below = phi - e.lower;
        ApproxReal above = e.upper - phi;
        const bool pass = below.certainly_positive() && above.certainly_positive();
        ApproxReal margin = below.value() < above.value() ? below : above;
        emit(family, make_certificate(family, n, xr, std::move(margin), reported, pass));
        break;
      }
      case Family::kConvergentError: {
        const ApproxReal distance = abs(phi - convergent_value(n, x, precision, table));
        emit(family, single(family, n, xr, first_order_error_bound(n, x, precision, table) - distance, reported));
        break;
      }
      case Family::kErrorDecrease:
        emit(family, single(family, n, xr,
                            first_order_error_bound(n, x, precision, table) - first_order_error_bound(n + 1, x, precision, table),
                            reported));
        break;
      case Family::kLogConvexity:
        emit(family, single(family, n, xr, log_convexity_check(n, x, precision, table), reported));
        break;
      case Family::kDerivativeSign: {
        ApproxReal derivative = phi_derivative(n, x, precision, table);
        if (n % 2 == 1) derivative = -derivative;
        emit(family, single(family, n, xr, std::move(derivative), reported));
        break;
      }
      case Family::kSecondOrder:
      case Family::kSecondOrderSharper: {
        const BoundValue bound = second_order_bound(n, x, precision, table);
        const bool lower = bound.role == Role::kLower;
        emit(Family::kSecondOrder,
             single(Family::kSecondOrder, n, xr, lower ? phi - bound.value : bound.value - phi, reported));
        if (sgn(xr) > 0) {
          const ApproxReal first = convergent_value(n, x, precision, table);
          emit(Family::kSecondOrderSharper,
               single(Family::kSecondOrderSharper, n, xr, lower ? bound.value - first : first - bound.value,
                      reported));
        }
        break;
      }
      default:
        break;
    }
  }
  return out;
}

}  // namespace

std::vector<Certificate> certify_grid(Family family, const std::vector<std::size_t>& orders,
                                      const std::vector<BigRational>& xs, Precision precision,
                                      const PolynomialTable& table) {
  for (const auto& x : xs) {
    const std::vector<std::size_t> fixed{family == Family::kSzarekWerner ? 1u : 0u};
    for (std::size_t n : (family == Family::kKomatsu || family == Family::kSzarekWerner) ? fixed : orders) {
      if (!in_domain(family, n, x)) {
        throw DomainError("x = " + to_string(x) + " is outside the domain of " + family_name(family, n));
      }
    }
  }

  // MPFR caches constants per thread only when built thread-safe.
  const std::size_t hardware = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = mpfr_buildopt_tls_p() ? std::min(hardware, std::max<std::size_t>(1, xs.size())) : 1;
  std::vector<std::future<std::vector<Keyed>>> futures;
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, [&, w] {
      std::vector<Keyed> part;
      for (std::size_t i = w; i < xs.size(); i += workers) {
        auto point = certify_point(family, orders, xs[i], precision, table);
        std::move(point.begin(), point.end(), std::back_inserter(part));
      }
      return part;
    }));
  }
  std::vector<Keyed> all;
  for (auto& f : futures) {
    auto part = f.get();
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  std::sort(all.begin(), all.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.family, a.certificate.n, a.certificate.x) < std::tie(b.family, b.certificate.n, b.certificate.x);
  });
  std::vector<Certificate> result;
  result.reserve(all.size());
  for (auto& k : all) result.push_back(std::move(k.certificate));
  return result;
}

}  // namespace mills
