#include "aomega/rings.hpp"

#include "aomega/ainf.hpp"

namespace aomega {

std::optional<Integer> IntegerRing::exact_div(const Integer& a, const Integer& b) const {
  if (b == 0) throw std::domain_error("IntegerRing::exact_div: division by zero");
  if (a % b != 0) return std::nullopt;
  return Integer(a / b);
}

Integer ModRing::normalize(const Integer& a) const {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

bool LaurentRing::is_unit(const Laurent& a) const {
  if (a.is_zero()) return false;
  const Laurent s = strip_prime_to_p_factors(a);
  return s.is_constant() && (s.coefficient(0) == 1 || s.coefficient(0) == -1);
}

bool LaurentRing::divides(const Laurent& b, const Laurent& a) const { return ainf_divides(b, a); }

std::optional<Laurent> LaurentRing::exact_div(const Laurent& a, const Laurent& b) const {
  return laurent_exact_div(a, b);
}

}  // namespace aomega
