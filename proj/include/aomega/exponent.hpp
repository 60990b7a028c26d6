#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "aomega/integer.hpp"

namespace aomega {

/// An element of Z[1/p] written as numerator / p^den_pow in lowest terms
/// (p does not divide the numerator unless den_pow == 0).
class RationalExponent {
 public:
  RationalExponent() = default;
  RationalExponent(std::int64_t p, std::int64_t numerator, int den_pow = 0);

  static RationalExponent integer(std::int64_t p, std::int64_t value) { return {p, value, 0}; }

  std::int64_t prime() const { return p_; }
  std::int64_t numerator() const { return num_; }
  int den_pow() const { return den_pow_; }
  bool is_integral() const { return den_pow_ == 0; }
  bool is_zero() const { return num_ == 0; }

  /// Numerator once the denominator is raised to p^depth; requires den_pow <= depth.
  std::int64_t scaled(int depth) const;

  Valuation valuation() const;

  RationalExponent operator+(const RationalExponent& o) const;
  RationalExponent operator-(const RationalExponent& o) const;
  RationalExponent operator-() const { return {p_, -num_, den_pow_}; }
  RationalExponent times_p() const { return {p_, num_ * p_, den_pow_}; }
  RationalExponent over_p() const { return {p_, num_, den_pow_ + 1}; }

  friend bool operator==(const RationalExponent& a, const RationalExponent& b) {
    return a.p_ == b.p_ && a.num_ == b.num_ && a.den_pow_ == b.den_pow_;
  }
  friend std::strong_ordering operator<=>(const RationalExponent& a, const RationalExponent& b);

  std::string to_string() const;

 private:
  std::int64_t p_ = 2;
  std::int64_t num_ = 0;
  int den_pow_ = 0;
};

/// v_p of a rational exponent: negative for proper denominators, nullopt for 0.
inline Valuation p_valuation(const RationalExponent& x) { return x.valuation(); }

}  // namespace aomega
