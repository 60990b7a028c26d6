#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aomega/laurent.hpp"

namespace aomega {

/// Dense polynomial in u over F_p (p prime), coefficients low degree first,
/// no trailing zeros.
class FpPoly {
 public:
  FpPoly() = default;
  explicit FpPoly(std::int64_t p) : p_(p) {}
  FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs);

  static FpPoly constant(std::int64_t p, std::int64_t c) { return FpPoly(p, {c}); }
  static FpPoly monomial(std::int64_t p, std::size_t degree, std::int64_t c = 1);
  /// Reduction mod p of an integral polynomial; throws for negative exponents.
  static FpPoly from_laurent(const Laurent& x, std::int64_t p);
  /// Reduction mod p of x * u^{-min exponent}: the generator of the same
  /// ideal in F_p[u^{+-1}] with nonzero constant term.
  static FpPoly unit_normalized(const Laurent& x, std::int64_t p);

  std::int64_t prime() const { return p_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_unit() const { return c_.size() == 1; }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  std::int64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::int64_t evaluate(std::int64_t x) const;
  /// Substitution u -> u + shift.
  FpPoly taylor_shift(std::int64_t shift) const;
  /// Multiplicity of (u - root) as a factor; requires nonzero.
  int root_multiplicity(std::int64_t root) const;

  FpPoly& operator+=(const FpPoly& o);
  FpPoly& operator-=(const FpPoly& o);
  FpPoly operator-() const;
  friend FpPoly operator+(FpPoly a, const FpPoly& b) { return a += b; }
  friend FpPoly operator-(FpPoly a, const FpPoly& b) { return a -= b; }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();

  std::int64_t p_ = 2;
  std::vector<std::int64_t> c_;
};

struct FpPolyDivision {
  FpPoly quotient;
  FpPoly remainder;
};

FpPolyDivision divmod(const FpPoly& a, const FpPoly& b);
std::optional<FpPoly> exact_div(const FpPoly& a, const FpPoly& b);
inline bool divides(const FpPoly& b, const FpPoly& a) {
  return b.is_zero() ? a.is_zero() : divmod(a, b).remainder.is_zero();
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p);

}  // namespace aomega
