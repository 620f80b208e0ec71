#include "mills/continued_fraction.hpp"

namespace mills {

namespace {

BigRational even_b(std::size_t k) {
  BigInt four_power;
  mpz_ui_pow_ui(four_power.get_mpz_t(), 4, k);
  return make_rational(binomial(static_cast<long>(2 * k), static_cast<long>(k)), four_power);
}

}  // namespace

BigRational cf_b(std::size_t n) {
  const std::size_t k = n / 2;
  if (n % 2 == 0) return even_b(k);
  return BigRational(1) / (BigRational(static_cast<unsigned long>(2 * k + 1)) * even_b(k));
}

BigRational cf_convergent(std::size_t n, const BigRational& x) {
  if (n == 0) {
    throw DomainError("convergent order must be at least 1");
  }
  if (sgn(x) <= 0) {
    throw DomainError("the continued fraction is defined for x > 0");
  }
  BigRational p_prev = 1;
  BigRational p = x;
  BigRational q_prev = 0;
  BigRational q = 1;
  for (std::size_t k = 1; k < n; ++k) {
    const BigRational step = cf_b(k) * x;
    BigRational p_next = step * p + p_prev;
    BigRational q_next = step * q + q_prev;
    p_prev = std::move(p);
    p = std::move(p_next);
    q_prev = std::move(q);
    q = std::move(q_next);
  }
  return q / p;
}

PrecReal cf_ladder_eval(std::size_t depth, const PrecReal& x, Precision precision) {
  if (depth == 0) {
    throw DomainError("ladder depth must be at least 1");
  }
  if (x.sign() <= 0) {
    throw DomainError("the continued fraction is defined for x > 0");
  }
  const PrecReal x_w = x.rounded(precision);
  PrecReal tail = x_w;
  for (std::size_t k = depth; k >= 1; --k) {
    tail = x_w + PrecReal(static_cast<long>(k), precision) / tail;
  }
  return PrecReal(1L, precision) / tail;
}

std::string render_expansion(std::size_t terms) {
  std::string text = "[0";
  for (std::size_t k = 0; k < terms; ++k) {
    text += k == 0 ? "; " : ", ";
    text += to_string(cf_b(k)) + "*x";
  }
  if (terms > 0) text += ", ...";
  return text + "]";
}

}  // namespace mills
