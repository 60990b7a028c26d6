#include "aomega/integer.hpp"

#include <stdexcept>

namespace aomega {

std::string to_string(const Integer& x) { return x.get_str(10); }

Integer parse_integer(std::string_view text) {
  Integer out;
  if (text.empty() || out.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  return out;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

std::int64_t ipow(std::int64_t base, unsigned exponent) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (r > INT64_MAX / (base < 0 ? -base : base)) throw std::overflow_error("ipow overflow");
    r *= base;
  }
  return r;
}

Valuation p_valuation(const Integer& x, std::int64_t p) {
  if (p < 2) throw std::invalid_argument("p_valuation: p must be >= 2");
  if (x == 0) return std::nullopt;
  Integer y = abs(x);
  std::int64_t k = 0;
  const Integer P = static_cast<long>(p);
  while (mpz_divisible_p(y.get_mpz_t(), P.get_mpz_t())) {
    y /= P;
    ++k;
  }
  return k;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t floor_div(std::int64_t a, std::int64_t m) {
  std::int64_t q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) { return a - floor_div(a, m) * m; }

}  // namespace aomega
