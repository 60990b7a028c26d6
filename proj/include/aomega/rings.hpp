#pragma once

#include <optional>
#include <string>

#include "aomega/cyclotomic.hpp"
#include "aomega/fp_poly.hpp"
#include "aomega/integer.hpp"
#include "aomega/laurent.hpp"

namespace aomega {

// Ring contexts. Each carries whatever parameters its elements need and
// exposes the same small interface, so complexes and matrices can be generic.

struct IntegerRing {
  using Element = Integer;
  /// Tag only; lets a complex be relabeled (restriction of scalars) without
  /// touching its matrices.
  std::string label = "Z";
  std::string tag() const { return label; }
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long c) const { return c; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool is_zero(const Element& a) const { return a == 0; }
  bool is_unit(const Element& a) const { return a == 1 || a == -1; }
  bool divides(const Element& b, const Element& a) const { return b == 0 ? a == 0 : a % b == 0; }
  std::optional<Element> exact_div(const Element& a, const Element& b) const;
  std::string str(const Element& a) const { return a.get_str(); }
  bool operator==(const IntegerRing&) const { return true; }
};

/// Z/n, elements kept in [0, n).
struct ModRing {
  using Element = Integer;
  Integer n = 2;
  std::string tag() const { return "Z/" + n.get_str(); }
  Element normalize(const Element& a) const;
  Element zero() const { return 0; }
  Element one() const { return normalize(1); }
  Element from_int(long c) const { return normalize(c); }
  Element add(const Element& a, const Element& b) const { return normalize(a + b); }
  Element sub(const Element& a, const Element& b) const { return normalize(a - b); }
  Element mul(const Element& a, const Element& b) const { return normalize(a * b); }
  Element neg(const Element& a) const { return normalize(-a); }
  bool is_zero(const Element& a) const { return normalize(a) == 0; }
  bool is_unit(const Element& a) const { return aomega::gcd(a, n) == 1; }
  bool divides(const Element& b, const Element& a) const { return normalize(a) % aomega::gcd(b, n) == 0; }
  std::string str(const Element& a) const { return normalize(a).get_str(); }
  bool operator==(const ModRing&) const = default;
};

/// The A_inf model ring at depth n. Divisibility and units are those of the
/// localization at the non-p-power cyclotomic polynomials (units of A_inf);
/// exact_div returns the quotient only when it already lies in Z[u^{+-1}].
struct LaurentRing {
  using Element = Laurent;
  std::int64_t p = 2;
  int depth = 1;
  std::string tag() const { return "A(p=" + std::to_string(p) + ",n=" + std::to_string(depth) + ")"; }
  Element zero() const { return Laurent(p, depth); }
  Element one() const { return Laurent::constant(p, depth, 1); }
  Element from_int(long c) const { return Laurent::constant(p, depth, c); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  bool is_unit(const Element& a) const;
  bool divides(const Element& b, const Element& a) const;
  std::optional<Element> exact_div(const Element& a, const Element& b) const;
  std::string str(const Element& a) const { return a.to_string(); }
  bool operator==(const LaurentRing&) const = default;
};

/// Z[zeta_{p^level}], the O_C model.
struct CyclotomicRing {
  using Element = Cyclotomic;
  std::int64_t p = 2;
  int level = 1;
  std::string tag() const { return "O(p=" + std::to_string(p) + ",level=" + std::to_string(level) + ")"; }
  Element zero() const { return Cyclotomic(p, level); }
  Element one() const { return Cyclotomic::constant(p, level, 1); }
  Element from_int(long c) const { return Cyclotomic::constant(p, level, c); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  bool is_unit(const Element& a) const { return a.is_unit(); }
  bool divides(const Element& b, const Element& a) const { return aomega::divides(b, a); }
  std::optional<Element> exact_div(const Element& a, const Element& b) const { return cyclotomic_exact_div(a, b); }
  std::string str(const Element& a) const { return a.to_string(); }
  bool operator==(const CyclotomicRing&) const = default;
};

/// F_p[u].
struct FpPolyRing {
  using Element = FpPoly;
  std::int64_t p = 2;
  std::string tag() const { return "F" + std::to_string(p) + "[u]"; }
  Element zero() const { return FpPoly(p); }
  Element one() const { return FpPoly::constant(p, 1); }
  Element from_int(long c) const { return FpPoly::constant(p, c); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  bool is_unit(const Element& a) const { return a.is_unit(); }
  bool divides(const Element& b, const Element& a) const { return aomega::divides(b, a); }
  std::optional<Element> exact_div(const Element& a, const Element& b) const { return aomega::exact_div(a, b); }
  std::string str(const Element& a) const { return a.to_string(); }
  bool operator==(const FpPolyRing&) const = default;
};

}  // namespace aomega
