#include "mills/big.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>

namespace mills {

BigRational make_rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) {
    throw DomainError("rational with zero denominator");
  }
  BigRational result(numerator, denominator);
  result.canonicalize();
  return result;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw DomainError("not an integer: '" + std::string(s) + "'");
  }
  BigInt value(std::string(s), 10);
  return negative ? BigInt(-value) : value;
}

BigRational parse_decimal(std::string_view s) {
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = parse_integer(s.substr(e + 1)).get_si();
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  std::string_view whole = s;
  std::string_view fraction;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    whole = s.substr(0, dot);
    fraction = s.substr(dot + 1);
  }
  if ((whole.empty() && fraction.empty()) ||
      (!whole.empty() && !all_digits(whole)) ||
      (!fraction.empty() && !all_digits(fraction))) {
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
  digits.append(whole).append(fraction);
  BigInt numerator(digits, 10);
  exponent -= static_cast<long>(fraction.size());
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  BigRational result = exponent < 0 ? make_rational(numerator, scale) : BigRational(numerator * scale);
  return negative ? BigRational(-result) : result;
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) {
    throw DomainError("empty number");
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt numerator = parse_integer(text.substr(0, slash));
    BigInt denominator = parse_integer(text.substr(slash + 1));
    return make_rational(numerator, denominator);
  }
  return parse_decimal(text);
}

std::string to_string(const BigRational& value) { return value.get_str(); }

const BigInt& factorial(std::size_t n) {
  static std::shared_mutex mutex;
  // deque: references survive growth.
  static std::deque<BigInt> table{BigInt(1)};
  {
    std::shared_lock lock(mutex);
    if (n < table.size()) return table[n];
  }
  std::unique_lock lock(mutex);
  while (table.size() <= n) {
    table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  }
  return table[n];
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

}  // namespace mills
