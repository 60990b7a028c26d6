#include "aomega/fp_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace aomega {

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = mod_floor(a, p);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::domain_error("mod_inverse: not invertible");
  return mod_floor(t, p);
}

FpPoly::FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& x : c_) x = mod_floor(x, p_);
  trim();
}

FpPoly FpPoly::monomial(std::int64_t p, std::size_t degree, std::int64_t c) {
  std::vector<std::int64_t> v(degree + 1, 0);
  v[degree] = c;
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::from_laurent(const Laurent& x, std::int64_t p) {
  if (x.is_zero()) return FpPoly(p);
  if (x.min_exponent() < 0) throw std::domain_error("FpPoly::from_laurent: negative exponent");
  std::vector<std::int64_t> v(static_cast<std::size_t>(x.max_exponent() + 1), 0);
  const Integer P = static_cast<long>(p);
  for (const auto& [e, c] : x.terms()) {
    Integer r = c % P;
    v[static_cast<std::size_t>(e)] = r.get_si();
  }
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::unit_normalized(const Laurent& x, std::int64_t p) {
  FpPoly out(p);
  if (x.is_zero()) return out;
  // Drop terms that vanish mod p before choosing the shift.
  Laurent::Terms kept;
  const Integer P = static_cast<long>(p);
  for (const auto& [e, c] : x.terms()) {
    Integer r = c % P;
    if (r != 0) kept.emplace(e, r);
  }
  if (kept.empty()) return out;
  const std::int64_t shift = kept.begin()->first;
  std::vector<std::int64_t> v(static_cast<std::size_t>(kept.rbegin()->first - shift + 1), 0);
  for (const auto& [e, c] : kept) v[static_cast<std::size_t>(e - shift)] = c.get_si();
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::int64_t FpPoly::evaluate(std::int64_t x) const {
  std::int64_t acc = 0;
  const std::int64_t xm = mod_floor(x, p_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * xm + *it) % p_;
  return acc;
}

FpPoly FpPoly::taylor_shift(std::int64_t shift) const {
  // Repeated synthetic division by u - s: after pass i, c[i] is the i-th
  // coefficient of f(u + s).
  std::vector<std::int64_t> c = c_;
  const std::int64_t s = mod_floor(shift, p_);
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    for (std::size_t j = c.size() - 1; j-- > i;) c[j] = (c[j] + s * c[j + 1]) % p_;
  return FpPoly(p_, std::move(c));
}

int FpPoly::root_multiplicity(std::int64_t root) const {
  if (is_zero()) throw std::domain_error("root_multiplicity of zero polynomial");
  std::vector<std::int64_t> c = c_;
  const std::int64_t s = mod_floor(root, p_);
  int m = 0;
  for (;; ++m) {
    // c <- c / (u - s), stopping at a nonzero remainder.
    std::int64_t carry = 0;
    for (std::size_t j = c.size(); j-- > 0;) {
      const std::int64_t next = (c[j] + s * carry) % p_;
      c[j] = carry;
      carry = next;
    }
    if (carry != 0) return m;
    c.pop_back();
  }
}

FpPoly& FpPoly::operator+=(const FpPoly& o) {
  if (p_ != o.p_) throw std::invalid_argument("FpPoly: prime mismatch");
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = (c_[i] + o.c_[i]) % p_;
  trim();
  return *this;
}

FpPoly& FpPoly::operator-=(const FpPoly& o) { return *this += -o; }

FpPoly FpPoly::operator-() const {
  FpPoly out(*this);
  for (auto& x : out.c_) x = (p_ - x) % p_;
  return out;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("FpPoly: prime mismatch");
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
  std::vector<std::int64_t> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = (v[i + j] + a.c_[i] * b.c_[j]) % a.p_;
  }
  return FpPoly(a.p_, std::move(v));
}

FpPolyDivision divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw std::domain_error("FpPoly divmod: division by zero");
  const std::int64_t p = a.prime();
  std::vector<std::int64_t> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const std::int64_t inv_lead = mod_inverse(bc.back(), p);
  std::vector<std::int64_t> q(r.size() >= bc.size() ? r.size() - db : 0, 0);
  for (std::size_t k = r.size(); k-- > db;) {
    const std::int64_t c = r[k] * inv_lead % p;
    if (c == 0) continue;
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = mod_floor(r[k - db + j] - c * bc[j], p);
  }
  return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

std::optional<FpPoly> exact_div(const FpPoly& a, const FpPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

std::string FpPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (i == 0 || c_[i] != 1) out << c_[i];
    if (i > 0) out << (c_[i] != 1 ? "*u" : "u");
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

}  // namespace aomega
