#include "aomega/cyclotomic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "aomega/fp_poly.hpp"

namespace aomega {

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// In-place reduction modulo Phi_{p^k}; works for any coefficient type.
template <class T>
void reduce_mod_phi(std::vector<T>& v, std::int64_t p, int level) {
  if (level == 0) {
    T s = 0;
    for (const auto& x : v) s += x;
    v.assign(1, s);
    return;
  }
  const std::size_t step = static_cast<std::size_t>(ipow(p, static_cast<unsigned>(level - 1)));
  const std::size_t deg = step * static_cast<std::size_t>(p - 1);
  for (std::size_t j = v.size(); j-- > deg;) {
    if (v[j] == 0) continue;
    const T c = v[j];
    const std::size_t base = j - deg;
    for (std::int64_t i = 0; i < p; ++i) v[base + static_cast<std::size_t>(i) * step] -= c;
  }
  v.resize(deg, T(0));
}

QPoly phi_qpoly(std::int64_t p, int level) {
  const Laurent f = cyclotomic_polynomial(p, level, 1);
  QPoly out(static_cast<std::size_t>(f.max_exponent() + 1), 0);
  for (const auto& [e, c] : f.terms()) out[static_cast<std::size_t>(e)] = c;
  return out;
}

// a = q*b + r with deg r < deg b.
void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  trim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  const mpq_class lead = b.back();
  for (std::size_t k = r.size(); k-- >= b.size();) {
    if (r[k] == 0) continue;
    const mpq_class c = r[k] / lead;
    const std::size_t shift = k - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
  }
  trim(r);
  trim(q);
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

Laurent lift(const Cyclotomic& x) {
  Laurent::Terms t;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i)
    if (x.coeffs()[i] != 0) t.emplace(static_cast<std::int64_t>(i), x.coeffs()[i]);
  return Laurent(x.prime(), 1, std::move(t));
}

// k in [0, p^level) with x = zeta^k, when x is a power of zeta. Reduced powers
// are either u^k or -(u^r + u^{r+s} + ... + u^{r+(p-2)s}) with s = p^{level-1}.
std::optional<std::int64_t> zeta_exponent(const Cyclotomic& x) {
  const std::int64_t p = x.prime();
  const std::size_t step = static_cast<std::size_t>(ipow(p, static_cast<unsigned>(x.level() - 1)));
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    if (x.coeffs()[i] == 0) continue;
    if (nz.size() == static_cast<std::size_t>(p - 1)) return std::nullopt;
    nz.push_back(i);
  }
  if (nz.size() == 1 && x.coeffs()[nz[0]] == 1) return static_cast<std::int64_t>(nz[0]);
  if (nz.size() != static_cast<std::size_t>(p - 1) || nz[0] >= step) return std::nullopt;
  for (std::size_t i = 0; i < nz.size(); ++i)
    if (nz[i] != nz[0] + i * step || x.coeffs()[nz[i]] != -1) return std::nullopt;
  return static_cast<std::int64_t>(nz[0] + static_cast<std::size_t>(p - 1) * step);
}

// a / (zeta^k - 1) for 0 < k < p^level. With k = p^v k' and eta = zeta^{k'},
// the divisor is B = eta^{p^v} - 1 and Phi(eta) = p mod B, so a (written in
// eta) is divisible iff a mod B lies in p Z[eta]/B; then a + t Phi is a
// multiple of B as a polynomial for t = -(a mod B)/p.
std::optional<Cyclotomic> divide_by_binomial(const Cyclotomic& a, std::int64_t k) {
  const std::int64_t p = a.prime();
  const int level = a.level();
  const std::int64_t order = ipow(p, static_cast<unsigned>(level));
  const std::size_t step = static_cast<std::size_t>(order / p);
  std::int64_t unit = k, v = 0;
  for (; unit % p == 0; unit /= p) ++v;
  std::int64_t inverse = 1;
  while (inverse * unit % order != 1) ++inverse;

  std::vector<Integer> r(static_cast<std::size_t>(order), 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    r[static_cast<std::size_t>(static_cast<std::int64_t>(i) * inverse % order)] += a.coeffs()[i];
  reduce_mod_phi(r, p, level);

  const auto b = static_cast<std::size_t>(ipow(p, static_cast<unsigned>(v)));
  std::vector<Integer> t(b, 0);
  for (std::size_t i = 0; i < r.size(); ++i) t[i % b] += r[i];
  const Integer P = static_cast<long>(p);
  for (auto& x : t) {
    if (x % P != 0) return std::nullopt;
    x = -x / P;
  }
  r.resize(std::max(r.size(), b + static_cast<std::size_t>(p - 1) * step), 0);
  for (std::size_t j = 0; j < b; ++j)
    for (std::int64_t i = 0; i < p; ++i) r[j + static_cast<std::size_t>(i) * step] += t[j];

  // r = c (u^b - 1), from the top: r_n = c_{n-b} - c_n.
  std::vector<Integer> c(r.size() - b, 0);
  for (std::size_t n = r.size(); n-- > b;) c[n - b] = r[n] + (n < c.size() ? c[n] : Integer(0));
  for (std::size_t n = 0; n < b; ++n)
    if (r[n] != -(n < c.size() ? c[n] : Integer(0))) throw std::logic_error("divide_by_binomial: inexact");

  std::vector<Integer> out(static_cast<std::size_t>(order), 0);
  for (std::size_t j = 0; j < c.size(); ++j)
    out[static_cast<std::size_t>(static_cast<std::int64_t>(j) * unit % order)] += c[j];
  return Cyclotomic(p, level, std::move(out));
}

}  // namespace

std::int64_t cyclotomic_degree(std::int64_t p, int level) {
  if (level == 0) return 1;
  return (p - 1) * ipow(p, static_cast<unsigned>(level - 1));
}

Laurent cyclotomic_polynomial(std::int64_t p, int level, int depth) {
  if (level == 0) return Laurent::monomial(p, depth, 1) - Laurent::constant(p, depth, 1);
  const std::int64_t step = ipow(p, static_cast<unsigned>(level - 1));
  Laurent out(p, depth);
  for (std::int64_t i = 0; i < p; ++i) out += Laurent::monomial(p, depth, i * step);
  return out;
}

Cyclotomic::Cyclotomic(std::int64_t p, int level)
    : p_(p), level_(level), c_(static_cast<std::size_t>(cyclotomic_degree(p, level)), 0) {
  if (level < 0) throw std::invalid_argument("Cyclotomic: negative level");
}

Cyclotomic::Cyclotomic(std::int64_t p, int level, std::vector<Integer> coeffs)
    : p_(p), level_(level), c_(std::move(coeffs)) {
  const auto n = static_cast<std::size_t>(cyclotomic_degree(p, level));
  if (c_.size() < n) c_.resize(n, 0);
  reduce_mod_phi(c_, p_, level_);
}

Cyclotomic Cyclotomic::reduce(const Laurent& x, int level) {
  const std::int64_t p = x.prime();
  const std::int64_t order = ipow(p, static_cast<unsigned>(level));
  std::vector<Integer> v(static_cast<std::size_t>(order), 0);
  for (const auto& [e, c] : x.terms()) v[static_cast<std::size_t>(mod_floor(e, order))] += c;
  return Cyclotomic(p, level, std::move(v));
}

Cyclotomic Cyclotomic::constant(std::int64_t p, int level, const Integer& c) {
  Cyclotomic out(p, level);
  out.c_[0] = c;
  return out;
}

Cyclotomic Cyclotomic::zeta_power(std::int64_t p, int level, std::int64_t e) {
  return reduce(Laurent::monomial(p, 1, e), level);
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_unit() const {
  return !is_zero() && cyclotomic_exact_div(constant(p_, level_, 1), *this).has_value();
}

Valuation Cyclotomic::pi_valuation() const {
  if (is_zero()) return std::nullopt;
  const Integer P = static_cast<long>(p_);
  std::vector<Integer> v = c_;
  std::int64_t val = 0;
  for (;;) {
    bool all_div = true;
    for (const auto& x : v)
      if (x % P != 0) {
        all_div = false;
        break;
      }
    if (!all_div) break;
    for (auto& x : v) x /= P;
    val += static_cast<std::int64_t>(v.size());
  }
  std::vector<std::int64_t> red(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Integer r = v[i] % P;
    red[i] = r.get_si();
  }
  return val + FpPoly(p_, std::move(red)).root_multiplicity(1);
}

Integer Cyclotomic::to_integer() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) throw std::domain_error("Cyclotomic::to_integer: not a rational integer");
  return c_[0];
}

void Cyclotomic::require_same_ring(const Cyclotomic& o) const {
  if (p_ != o.p_ || level_ != o.level_)
    throw std::invalid_argument("Cyclotomic: ring mismatch (p=" + std::to_string(p_) + ", level " +
                                std::to_string(level_) + " vs p=" + std::to_string(o.p_) + ", level " +
                                std::to_string(o.level_) + ")");
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  require_same_ring(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  require_same_ring(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out(*this);
  for (auto& x : out.c_) x = -x;
  return out;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  a.require_same_ring(b);
  std::vector<Integer> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Cyclotomic(a.p_, a.level_, std::move(v));
}

std::string Cyclotomic::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    const Integer& c = c_[i];
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    const Integer mag = abs(c);
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i > 0) out << (mag != 1 ? "*z" : "z");
    if (i > 1) out << "^" << i;
  }
  if (first) return "0";
  return out.str();
}

std::optional<Cyclotomic> cyclotomic_exact_div(const Cyclotomic& a, const Cyclotomic& b) {
  if (b.prime() != a.prime() || b.level() != a.level())
    throw std::invalid_argument("cyclotomic_exact_div: ring mismatch");
  if (b.is_zero()) throw std::domain_error("cyclotomic_exact_div: division by zero");
  const std::int64_t p = a.prime();
  const int level = a.level();
  if (a.is_zero()) return Cyclotomic(p, level);
  if (level >= 1) {
    const Cyclotomic one = Cyclotomic::constant(p, level, 1);
    if (const auto k = zeta_exponent(b + one)) return divide_by_binomial(a, *k);
    if (const auto k = zeta_exponent(one - b)) {
      auto c = divide_by_binomial(a, *k);
      if (c) c = -*c;
      return c;
    }
  }
  // (zeta - 1) is the only prime above p, so its valuation is a cheap
  // necessary condition.
  if (*a.pi_valuation() < *b.pi_valuation()) return std::nullopt;
  if (auto q = laurent_exact_div(lift(a), lift(b))) return Cyclotomic::reduce(*q, level);

  // General case: invert b modulo Phi over Q by extended Euclid.
  const QPoly phi = phi_qpoly(p, level);
  QPoly r0 = phi, r1(b.coeffs().begin(), b.coeffs().end());
  trim(r1);
  QPoly s0, s1{mpq_class(1)};
  QPoly quo, rem;
  while (!r1.empty()) {
    qdivmod(r0, r1, quo, rem);
    QPoly s2 = qsub(s0, qmul(quo, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw std::logic_error("cyclotomic_exact_div: modulus not irreducible");
  for (auto& x : s0) x /= r0[0];
  QPoly c = qmul(s0, QPoly(a.coeffs().begin(), a.coeffs().end()));
  if (c.size() < static_cast<std::size_t>(cyclotomic_degree(p, level))) c.resize(cyclotomic_degree(p, level), 0);
  reduce_mod_phi(c, p, level);
  std::vector<Integer> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i].canonicalize();
    if (c[i].get_den() != 1) return std::nullopt;
    out[i] = c[i].get_num();
  }
  return Cyclotomic(p, level, std::move(out));
}

}  // namespace aomega
