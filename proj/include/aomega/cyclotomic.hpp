#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aomega/laurent.hpp"

namespace aomega {

/// Z[zeta_{p^k}] = Z[u]/Phi_{p^k}(u), elements stored as coefficient vectors of
/// length phi(p^k) = (p-1)p^{k-1} (length 1 for k = 0, where zeta = 1).
/// This is the O_C model: A_n/(xi) at level n.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(std::int64_t p, int level);
  Cyclotomic(std::int64_t p, int level, std::vector<Integer> coeffs);

  /// Image of x under u -> zeta_{p^level}.
  static Cyclotomic reduce(const Laurent& x, int level);
  static Cyclotomic constant(std::int64_t p, int level, const Integer& c);
  /// zeta^e.
  static Cyclotomic zeta_power(std::int64_t p, int level, std::int64_t e);

  std::int64_t prime() const { return p_; }
  int level() const { return level_; }
  std::size_t dimension() const { return c_.size(); }
  const std::vector<Integer>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_unit() const;
  /// Valuation at the unique prime (zeta - 1) above p; nullopt for zero.
  /// At level 0 this is v_p.
  Valuation pi_valuation() const;
  /// The ring map to Z sending zeta -> 1 is only defined at level 0; this
  /// returns the constant coefficient and throws elsewhere if non-constant.
  Integer to_integer() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic operator-() const;
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.p_ == b.p_ && a.level_ == b.level_ && a.c_ == b.c_;
  }

  std::string to_string() const;

 private:
  void require_same_ring(const Cyclotomic& o) const;

  std::int64_t p_ = 2;
  int level_ = 0;
  std::vector<Integer> c_;
};

/// Euler phi of p^level.
std::int64_t cyclotomic_degree(std::int64_t p, int level);
/// Phi_{p^level}(u) as a Laurent polynomial (u - 1 at level 0).
Laurent cyclotomic_polynomial(std::int64_t p, int level, int depth);

/// c with b*c = a in Z[zeta], or nullopt. Throws std::domain_error for b = 0.
std::optional<Cyclotomic> cyclotomic_exact_div(const Cyclotomic& a, const Cyclotomic& b);
inline bool divides(const Cyclotomic& b, const Cyclotomic& a) {
  return !b.is_zero() ? cyclotomic_exact_div(a, b).has_value() : a.is_zero();
}

}  // namespace aomega
