#include "mills/mills_polynomials.hpp"

#include <mutex>
#include <utility>

namespace mills {

namespace {

bool has_parity(const IntPolynomial& a, std::size_t parity) {
  const auto coefficients = a.coefficients();
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (k % 2 != parity % 2 && coefficients[k] != 0) return false;
  }
  return true;
}

bool all_non_negative(const IntPolynomial& a) {
  for (const auto& c : a.coefficients()) {
    if (c < 0) return false;
  }
  return true;
}

// prod_{k=1}^{n} (2k-1)^2
BigInt odd_square_product(std::size_t n) {
  BigInt product = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    product *= static_cast<unsigned long>((2 * k - 1) * (2 * k - 1));
  }
  return product;
}

BigInt power_of_two(std::size_t e) {
  BigInt result;
  mpz_ui_pow_ui(result.get_mpz_t(), 2, e);
  return result;
}

BigInt to_integer(const BigRational& value, const char* what) {
  if (value.get_den() != 1) {
    throw IdentityViolation(std::string(what) + ": non-integral coefficient " + to_string(value));
  }
  return value.get_num();
}

}  // namespace

PolynomialTable::PolynomialTable() {
  pairs_.push_back({0, IntPolynomial{1}, IntPolynomial{}});
  pairs_.push_back({1, IntPolynomial::x(), IntPolynomial{1}});
}

const PQPair& PolynomialTable::pq_pair(std::size_t n) const {
  {
    std::shared_lock lock(mutex_);
    if (n < pairs_.size()) return pairs_[n];
  }
  std::unique_lock lock(mutex_);
  const IntPolynomial x = IntPolynomial::x();
  while (pairs_.size() <= n) {
    const std::size_t k = pairs_.size() - 1;
    const PQPair& current = pairs_[k];
    const PQPair& previous = pairs_[k - 1];
    const BigInt weight(static_cast<unsigned long>(k));
    PQPair next{k + 1, x * current.p + weight * previous.p, x * current.q + weight * previous.q};
    pairs_.push_back(std::move(next));
  }
  return pairs_[n];
}

std::unique_ptr<PolynomialTable> PolynomialTable::with_corruption(std::size_t n) {
  auto table = std::make_unique<PolynomialTable>();
  table->pq_pair(n);
  table->pairs_[n].p = table->pairs_[n].p + IntPolynomial{1};
  table->pairs_.resize(std::max<std::size_t>(n + 1, 2));
  return table;
}

const PolynomialTable& default_table() {
  static const PolynomialTable table;
  return table;
}

const PQPair& pq_pair(std::size_t n) { return default_table().pq_pair(n); }

IntPolynomial p_closed_form(std::size_t n) {
  std::vector<BigInt> coefficients(n + 1);
  for (std::size_t k = 0; 2 * k <= n; ++k) {
    BigInt denominator = power_of_two(k) * factorial(k) * factorial(n - 2 * k);
    coefficients[n - 2 * k] = factorial(n) / denominator;
  }
  return IntPolynomial(std::move(coefficients));
}

IntPolynomial q_closed_form(std::size_t n) {
  if (n == 0) {
    throw DomainError("q_closed_form requires n >= 1");
  }
  const std::size_t m = n - 1;
  IntPolynomial sum;
  for (std::size_t k = 0; 2 * k <= m; ++k) {
    BigInt weight = factorial(m - k) / factorial(m - 2 * k);
    sum = sum + weight * p_closed_form(m - 2 * k);
  }
  return sum;
}

IntPolynomial q_coefficient_form(std::size_t n) {
  if (n == 0) {
    throw DomainError("q_coefficient_form requires n >= 1");
  }
  const std::size_t m = n - 1;
  std::vector<BigInt> coefficients(m + 1);
  for (std::size_t k = 0; 2 * k <= m; ++k) {
    BigRational inner = 0;
    for (std::size_t j = 0; j <= k; ++j) {
      inner += make_rational(factorial(m - k + j), power_of_two(j) * factorial(j));
    }
    coefficients[m - 2 * k] = to_integer(inner / BigRational(factorial(m - 2 * k)), "q_coefficient_form");
  }
  return IntPolynomial(std::move(coefficients));
}

QuadraticTriple quadratic_triple(std::size_t n, const PolynomialTable& table) {
  const PQPair& r0 = table.pq_pair(n);
  const PQPair& r1 = table.pq_pair(n + 1);
  const PQPair& r2 = table.pq_pair(n + 2);
  return {n,
          r0.p * r2.p - r1.p * r1.p,
          r0.p * r2.q + r2.p * r0.q - BigInt(2) * (r1.p * r1.q),
          r0.q * r2.q - r1.q * r1.q};
}

IntPolynomial a_closed_form(std::size_t n) {
  std::vector<BigInt> coefficients(2 * n + 1);
  const long nl = static_cast<long>(n);
  const int sign = n % 2 == 0 ? 1 : -1;
  for (std::size_t m = 0; m <= n; ++m) {
    BigRational a_mn = 0;
    if (m == 0) {
      a_mn = make_rational(BigInt(sign) * static_cast<unsigned long>(n + 1) * binomial(nl, nl / 2), power_of_two(n));
    } else if (m == 1) {
      a_mn = make_rational(BigInt(1 - sign) * static_cast<unsigned long>(n) * binomial(nl - 1, nl / 2), power_of_two(n));
    } else {
      for (std::size_t k = 0; 2 * k + m <= n; ++k) {
        BigRational central = make_rational(factorial(2 * k + 1), power_of_two(2 * k) * factorial(k) * factorial(k));
        a_mn += central * BigRational(binomial(nl - 2 * static_cast<long>(k) - 2, static_cast<long>(m) - 2));
      }
    }
    // The assembled n! a_{m,n} is an integer; the division by m! must be exact.
    BigInt scaled = to_integer(a_mn * BigRational(factorial(n)), "a_closed_form");
    if (!mpz_divisible_p(scaled.get_mpz_t(), factorial(m).get_mpz_t())) {
      throw IdentityViolation("a_closed_form: coefficient of x^" + std::to_string(2 * m) + " for n = " +
                              std::to_string(n) + " is not divisible by m!");
    }
    coefficients[2 * m] = scaled / factorial(m);
  }
  return IntPolynomial(std::move(coefficients));
}

IntPolynomial discriminant(std::size_t n, const PolynomialTable& table) {
  const QuadraticTriple t = quadratic_triple(n, table);
  IntPolynomial computed = t.b * t.b - BigInt(4) * (t.a * t.c);
  const BigInt& f = factorial(n);
  IntPolynomial closed = (f * f) * IntPolynomial{static_cast<long>(4 * n + 4), 0, 1};
  if (!(computed == closed)) {
    throw IdentityViolation("discriminant identity fails at n = " + std::to_string(n) + ": got " +
                            to_string(computed));
  }
  return closed;
}

PrecReal generating_function_residual(const BigRational& x, const BigRational& y, std::size_t terms,
                                      Precision precision) {
  if (!(abs(y) < 1)) {
    throw DomainError("generating function requires |y| < 1");
  }
  if (terms == 0) {
    throw DomainError("generating function requires at least one term");
  }
  BigRational partial = 0;
  BigRational y_power = 1;
  for (std::size_t n = 0; n < terms; ++n) {
    const PQPair& r0 = pq_pair(n);
    const PQPair& r1 = pq_pair(n + 1);
    const PQPair& r2 = pq_pair(n + 2);
    const IntPolynomial a = r0.p * r2.p - r1.p * r1.p;
    partial += evaluate(a, x) * y_power / BigRational(factorial(n));
    y_power *= y;
  }
  const Precision working = precision + 32;
  const BigRational one(1);
  PrecReal exponent(BigRational(y * x * x / (one - y)), working);
  PrecReal scale(BigRational(one + y), working);
  PrecReal radicand(BigRational(one - y * y), working);
  PrecReal closed = exp(exponent) / (scale * sqrt(radicand));
  return abs(PrecReal(partial, working) - closed).rounded(precision);
}

std::vector<IdentityCheck> verify_identities(std::size_t n_max, const PolynomialTable& table) {
  std::vector<IdentityCheck> report;
  auto record = [&report](const char* identity, std::size_t n, bool pass) { report.push_back({identity, n, pass}); };
  const IntPolynomial x = IntPolynomial::x();

  for (std::size_t n = 0; n <= n_max; ++n) {
    const PQPair& r0 = table.pq_pair(n);
    const PQPair& r1 = table.pq_pair(n + 1);
    const PQPair& r2 = table.pq_pair(n + 2);
    const BigInt& f = factorial(n);
    const BigInt signed_f = n % 2 == 0 ? f : BigInt(-f);

    record("p_derivative_recurrence", n, r1.p == x * r0.p + derivative(r0.p));
    record("q_derivative_recurrence", n, r1.q == r0.p + derivative(r0.q));
    if (n >= 1) {
      const PQPair& prev = table.pq_pair(n - 1);
      const BigInt weight(static_cast<unsigned long>(n));
      record("p_three_term", n, r1.p == x * r0.p + weight * prev.p);
      record("q_three_term", n, r1.q == x * r0.q + weight * prev.q);
      record("p_derivative_lowering", n, derivative(r0.p) == weight * prev.p);
      record("q_from_p_sum", n, r0.q == q_closed_form(n));
      record("q_coefficient_form", n, r0.q == q_coefficient_form(n));
    }
    record("p_closed_form", n, r0.p == p_closed_form(n));

    // Lowest coefficient of P_n and non-negativity of the rest give
    // P_2k(x) >= (2k)!/(2^k k!) and P_{2k+1}(x)/x >= (2k+1)!/(2^k k!).
    {
      const std::size_t k = n / 2;
      const BigInt expected = f / (power_of_two(k) * factorial(k));
      record("p_lower_bound", n, r0.p.coefficient(n % 2) == expected && all_non_negative(r0.p));
    }

    bool shape = r0.p.degree() == static_cast<long>(n) && r0.p.leading_coefficient() == 1 &&
                 has_parity(r0.p, n) && all_non_negative(r0.p) && all_non_negative(r0.q);
    if (n >= 1) {
      shape = shape && r0.q.degree() == static_cast<long>(n) - 1 && r0.q.leading_coefficient() == 1 &&
              has_parity(r0.q, n - 1);
    }
    record("parity_and_positivity", n, shape);

    record("determinant_1", n, r1.q * r0.p - r1.p * r0.q == IntPolynomial::constant(signed_f));
    record("determinant_2", n, r2.q * r0.p - r2.p * r0.q == IntPolynomial::monomial(signed_f, 1));

    bool discriminant_ok = true;
    try {
      discriminant(n, table);
    } catch (const IdentityViolation&) {
      discriminant_ok = false;
    }
    record("discriminant", n, discriminant_ok);

    const IntPolynomial a = r0.p * r2.p - r1.p * r1.p;
    bool closed_ok = true;
    try {
      closed_ok = a == a_closed_form(n);
    } catch (const IdentityViolation&) {
      closed_ok = false;
    }
    record("a_closed_form", n, closed_ok);

    // Even orders: even, degree 2n, non-negative, constant (n+1) prod (2k-1)^2.
    // Odd orders: A - A(0) even and non-negative, A(0) = -prod_{k<=(n+1)/2} (2k-1)^2.
    bool structure = has_parity(a, 0) && a.degree() == static_cast<long>(2 * n);
    if (n % 2 == 0) {
      structure = structure && all_non_negative(a) &&
                  a.coefficient(0) == BigInt(static_cast<unsigned long>(n + 1)) * odd_square_product(n / 2);
    } else {
      structure = structure && a.coefficient(0) == -odd_square_product((n + 1) / 2) &&
                  all_non_negative(a - IntPolynomial::constant(a.coefficient(0)));
    }
    record("a_structure", n, structure);
  }
  return report;
}

}  // namespace mills
