#pragma once

#include <cstdint>
#include <vector>

#include "aomega/fp_poly.hpp"

namespace aomega {

/// F_{p^m} = F_p[t]/(f) for a fixed monic irreducible f of degree m (the
/// lexicographically first one). Elements are coefficient vectors of length m.
class FiniteField {
 public:
  using Element = std::vector<std::int64_t>;

  FiniteField(std::int64_t p, int degree);

  std::int64_t characteristic() const { return p_; }
  int degree() const { return m_; }
  std::int64_t order() const { return order_; }
  const FpPoly& modulus() const { return modulus_; }

  Element zero() const { return Element(static_cast<std::size_t>(m_), 0); }
  Element one() const;
  /// The class of t (a generator of the field over F_p).
  Element generator() const;
  /// Enumeration index <-> element (base-p digits), for exhaustive search.
  Element from_index(std::int64_t index) const;

  bool is_zero(const Element& a) const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element scale(std::int64_t c, const Element& a) const;
  Element inverse(const Element& a) const;
  /// sigma(a) = a^p.
  Element frobenius(const Element& a) const;

 private:
  Element from_poly(const FpPoly& f) const;
  FpPoly to_poly(const Element& a) const;

  std::int64_t p_;
  int m_;
  std::int64_t order_;
  FpPoly modulus_;
};

/// Square matrices over F_{p^m}, row-major.
using FieldMatrix = std::vector<std::vector<FiniteField::Element>>;

/// Rank over F_{p^m} of the given vectors (each of length r).
int field_rank(const FiniteField& k, std::vector<std::vector<FiniteField::Element>> rows);

struct FixedPointResult {
  int rank = 0;                 // rank over F_{p^m} of the module
  int fp_dimension = 0;         // dim over F_p of L = ker(phi_M - 1)
  std::vector<std::vector<FiniteField::Element>> basis;  // F_p-basis of L
  bool spans = false;           // F_{p^m}-span of L is all of M
  bool requires_extension = false;
};

/// Fixed points of v -> A sigma(v) on F_{p^m}^r. Throws for singular A.
FixedPointResult frobenius_fixed_points(const FiniteField& k, const FieldMatrix& a);

}  // namespace aomega
