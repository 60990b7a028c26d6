#include "aomega/finite_field.hpp"

#include <stdexcept>

namespace aomega {

namespace {

bool is_irreducible(const FpPoly& f) {
  const std::int64_t p = f.prime();
  const std::int64_t m = f.degree();
  for (std::int64_t d = 1; 2 * d <= m; ++d) {
    const std::int64_t count = ipow(p, static_cast<unsigned>(d));
    for (std::int64_t idx = 0; idx < count; ++idx) {
      std::vector<std::int64_t> c(static_cast<std::size_t>(d + 1));
      std::int64_t r = idx;
      for (std::int64_t i = 0; i < d; ++i, r /= p) c[static_cast<std::size_t>(i)] = r % p;
      c[static_cast<std::size_t>(d)] = 1;
      if (divides(FpPoly(p, c), f)) return false;
    }
  }
  return true;
}

// Kernel of an F_p matrix (rows x cols), as a list of column vectors.
std::vector<std::vector<std::int64_t>> fp_kernel(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const std::int64_t inv = mod_inverse(a[r][c], p);
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::int64_t f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod_floor(a[i][j] - f * a[r][j], p);
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    is_pivot[c] = true;
    ++r;
  }
  std::vector<std::vector<std::int64_t>> kernel;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::int64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
      v[static_cast<std::size_t>(pivot_col_of_row[i])] = mod_floor(-a[i][free], p);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace

FiniteField::FiniteField(std::int64_t p, int degree) : p_(p), m_(degree), modulus_(p) {
  if (!is_prime(p)) throw std::invalid_argument("FiniteField: characteristic must be prime");
  if (degree < 1) throw std::invalid_argument("FiniteField: degree must be >= 1");
  order_ = ipow(p, static_cast<unsigned>(degree));
  for (std::int64_t idx = 0; idx < order_; ++idx) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree + 1));
    std::int64_t r = idx;
    for (int i = 0; i < degree; ++i, r /= p) c[static_cast<std::size_t>(i)] = r % p;
    c[static_cast<std::size_t>(degree)] = 1;
    FpPoly f(p, c);
    if (is_irreducible(f)) {
      modulus_ = f;
      return;
    }
  }
  throw std::logic_error("FiniteField: no irreducible polynomial found");
}

FiniteField::Element FiniteField::one() const {
  Element e = zero();
  e[0] = 1;
  return e;
}

FiniteField::Element FiniteField::generator() const { return from_poly(FpPoly::monomial(p_, 1)); }

FiniteField::Element FiniteField::from_index(std::int64_t index) const {
  Element e = zero();
  for (int i = 0; i < m_; ++i, index /= p_) e[static_cast<std::size_t>(i)] = index % p_;
  return e;
}

bool FiniteField::is_zero(const Element& a) const {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

FiniteField::Element FiniteField::from_poly(const FpPoly& f) const {
  const FpPoly r = divmod(f, modulus_).remainder;
  Element e = zero();
  for (int i = 0; i < m_; ++i) e[static_cast<std::size_t>(i)] = r.coeff(static_cast<std::size_t>(i));
  return e;
}

FpPoly FiniteField::to_poly(const Element& a) const { return FpPoly(p_, a); }

FiniteField::Element FiniteField::add(const Element& a, const Element& b) const {
  Element e = zero();
  for (int i = 0; i < m_; ++i) e[static_cast<std::size_t>(i)] = (a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]) % p_;
  return e;
}

FiniteField::Element FiniteField::sub(const Element& a, const Element& b) const {
  Element e = zero();
  for (int i = 0; i < m_; ++i)
    e[static_cast<std::size_t>(i)] = mod_floor(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)], p_);
  return e;
}

FiniteField::Element FiniteField::mul(const Element& a, const Element& b) const {
  return from_poly(to_poly(a) * to_poly(b));
}

FiniteField::Element FiniteField::scale(std::int64_t c, const Element& a) const {
  Element e = a;
  for (auto& x : e) x = mod_floor(x * c, p_);
  return e;
}

FiniteField::Element FiniteField::inverse(const Element& a) const {
  if (is_zero(a)) throw std::domain_error("FiniteField: inverse of zero");
  Element result = one(), base = a;
  for (std::int64_t e = order_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

FiniteField::Element FiniteField::frobenius(const Element& a) const {
  Element result = one();
  for (std::int64_t i = 0; i < p_; ++i) result = mul(result, a);
  return result;
}

int field_rank(const FiniteField& k, std::vector<std::vector<FiniteField::Element>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows.size(); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && k.is_zero(rows[piv][c])) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& pr = rows[static_cast<std::size_t>(rank)];
    const auto inv = k.inverse(pr[c]);
    for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < rows.size(); ++i) {
      if (k.is_zero(rows[i][c])) continue;
      const auto f = k.mul(rows[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = k.sub(rows[i][j], k.mul(f, pr[j]));
    }
    ++rank;
  }
  return rank;
}

FixedPointResult frobenius_fixed_points(const FiniteField& k, const FieldMatrix& a) {
  const std::size_t r = a.size();
  for (const auto& row : a)
    if (row.size() != r) throw std::invalid_argument("frobenius_fixed_points: matrix must be square");
  if (field_rank(k, a) != static_cast<int>(r))
    throw std::domain_error("frobenius_fixed_points: Frobenius matrix is singular");

  const std::size_t m = static_cast<std::size_t>(k.degree());
  const std::size_t n = m * r;
  // Column j of T = (A sigma - 1) applied to the j-th F_p basis vector.
  std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<FiniteField::Element> v(r, k.zero());
    v[j / m][j % m] = 1;
    for (std::size_t i = 0; i < r; ++i) {
      FiniteField::Element acc = k.zero();
      for (std::size_t l = 0; l < r; ++l) acc = k.add(acc, k.mul(a[i][l], k.frobenius(v[l])));
      acc = k.sub(acc, v[i]);
      for (std::size_t c = 0; c < m; ++c) t[i * m + c][j] = acc[c];
    }
  }
  FixedPointResult out;
  out.rank = static_cast<int>(r);
  for (const auto& kv : fp_kernel(t, k.characteristic())) {
    std::vector<FiniteField::Element> v(r, k.zero());
    for (std::size_t j = 0; j < n; ++j) v[j / m][j % m] = kv[j];
    out.basis.push_back(std::move(v));
  }
  out.fp_dimension = static_cast<int>(out.basis.size());
  out.spans = field_rank(k, out.basis) == out.rank;
  out.requires_extension = out.fp_dimension < out.rank;
  return out;
}

}  // namespace aomega
