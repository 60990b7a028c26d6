#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aomega/exponent.hpp"

namespace aomega {

/// Element of F_p[x^{1/p^infty}]: finitely many monomials x^e, e >= 0 in Z[1/p].
class PerfectionElement {
 public:
  using Terms = std::map<RationalExponent, std::int64_t>;

  PerfectionElement() = default;
  explicit PerfectionElement(std::int64_t p) : p_(p) {}
  PerfectionElement(std::int64_t p, Terms terms);

  static PerfectionElement constant(std::int64_t p, std::int64_t c);
  static PerfectionElement monomial(const RationalExponent& e, std::int64_t c = 1);

  std::int64_t prime() const { return p_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// a -> a^p: exponents times p (coefficients are fixed by Frobenius on F_p).
  PerfectionElement frobenius() const;
  PerfectionElement frobenius_inverse() const;

  PerfectionElement& operator+=(const PerfectionElement& o);
  PerfectionElement operator-() const;
  friend PerfectionElement operator+(PerfectionElement a, const PerfectionElement& b) { return a += b; }
  friend PerfectionElement operator-(PerfectionElement a, const PerfectionElement& b) { return a += -b; }
  friend PerfectionElement operator*(const PerfectionElement& a, const PerfectionElement& b);
  friend bool operator==(const PerfectionElement&, const PerfectionElement&) = default;

  std::string to_string() const;

 private:
  std::int64_t p_ = 2;
  Terms terms_;
};

/// W_m of the perfection, realized as (Z/p^m)[x^{Z[1/p]_{>=0}}]. Requires p^m < 2^31.
class TruncatedWittElement {
 public:
  using Terms = std::map<RationalExponent, std::int64_t>;

  TruncatedWittElement() = default;
  TruncatedWittElement(std::int64_t p, int precision);
  TruncatedWittElement(std::int64_t p, int precision, Terms terms);

  static TruncatedWittElement constant(std::int64_t p, int precision, std::int64_t c);

  std::int64_t prime() const { return p_; }
  int precision() const { return m_; }
  std::int64_t modulus() const { return pm_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Reduction W_m -> W_1 = the perfection.
  PerfectionElement reduce() const;
  /// Witt Frobenius: x^e -> x^{pe}.
  TruncatedWittElement frobenius() const;
  /// Exact division by p into W_{m-1}; throws unless every coefficient is divisible.
  TruncatedWittElement divide_by_p() const;
  /// W_m -> W_k for k <= m.
  TruncatedWittElement truncate(int precision) const;
  TruncatedWittElement pow(std::uint64_t e) const;

  TruncatedWittElement& operator+=(const TruncatedWittElement& o);
  TruncatedWittElement operator-() const;
  friend TruncatedWittElement operator+(TruncatedWittElement a, const TruncatedWittElement& b) { return a += b; }
  friend TruncatedWittElement operator-(TruncatedWittElement a, const TruncatedWittElement& b) { return a += -b; }
  friend TruncatedWittElement operator*(const TruncatedWittElement& a, const TruncatedWittElement& b);
  friend TruncatedWittElement operator*(std::int64_t c, const TruncatedWittElement& a);
  friend bool operator==(const TruncatedWittElement&, const TruncatedWittElement&) = default;

  std::string to_string() const;

 private:
  void require_same(const TruncatedWittElement& o) const;

  std::int64_t p_ = 2;
  int m_ = 1;
  std::int64_t pm_ = 2;
  Terms terms_;
};

/// [a] at precision m: b^{p^{m-1}} for any lift b of a^{1/p^{m-1}}.
TruncatedWittElement teichmuller_lift(const PerfectionElement& a, int precision);
/// (a_0, ..., a_{m-1}) with w = sum [a_i] p^i.
std::vector<PerfectionElement> teichmuller_digits(const TruncatedWittElement& w);
TruncatedWittElement digits_to_witt(const std::vector<PerfectionElement>& digits, std::int64_t p);

}  // namespace aomega
