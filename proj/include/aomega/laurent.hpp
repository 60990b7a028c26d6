#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "aomega/integer.hpp"

namespace aomega {

/// Exact Laurent polynomial in one variable u over the integers, living in the
/// depth-n model where q = u^(p^n). Zero coefficients are never stored, so two
/// elements are equal iff their term maps (and models) agree.
class Laurent {
 public:
  using Terms = std::map<std::int64_t, Integer>;

  Laurent() = default;
  Laurent(std::int64_t p, int depth);
  Laurent(std::int64_t p, int depth, Terms terms);

  static Laurent constant(std::int64_t p, int depth, const Integer& c);
  static Laurent monomial(std::int64_t p, int depth, std::int64_t exponent,
                          const Integer& c = 1);

  std::int64_t prime() const { return p_; }
  int depth() const { return depth_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  Integer coefficient(std::int64_t exponent) const;
  std::int64_t min_exponent() const;  // requires nonzero
  std::int64_t max_exponent() const;  // requires nonzero

  /// Value at u = 1, the ring map Z[u^{+-1}] -> Z.
  Integer at_one() const;

  /// Same coefficients, exponents multiplied by `factor` (u -> u^factor).
  Laurent substitute_power(std::int64_t factor) const;
  /// Same coefficient map reinterpreted in the model of another depth.
  Laurent with_depth(int depth) const { return Laurent(p_, depth, terms_); }

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent operator-() const;
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Integer& c, const Laurent& a);

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.p_ == b.p_ && a.depth_ == b.depth_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, e.g. "u^2 - 3*u^-1 + 1".
  std::string to_string() const;

  /// Throws std::invalid_argument naming `op` unless both share (p, depth).
  void require_same_model(const Laurent& o, const char* op) const;

 private:
  void add_term(std::int64_t e, const Integer& c);

  std::int64_t p_ = 2;
  int depth_ = 0;
  Terms terms_;
};

Laurent laurent_mul(const Laurent& a, const Laurent& b);

/// The c with b*c = a if it exists in Z[u^{+-1}]; std::nullopt otherwise.
/// Throws std::domain_error when b = 0.
std::optional<Laurent> laurent_exact_div(const Laurent& a, const Laurent& b);

inline bool divides(const Laurent& b, const Laurent& a) {
  return !b.is_zero() ? laurent_exact_div(a, b).has_value() : a.is_zero();
}

}  // namespace aomega
