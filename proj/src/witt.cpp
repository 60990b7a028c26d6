#include "aomega/witt.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aomega/integer.hpp"

namespace aomega {

namespace {

template <class Terms>
void add_into(Terms& t, const RationalExponent& e, std::int64_t c, std::int64_t mod) {
  auto [it, inserted] = t.emplace(e, 0);
  it->second = mod_floor(it->second + c, mod);
  if (it->second == 0) t.erase(it);
}

template <class Terms>
std::string terms_to_string(const Terms& t) {
  if (t.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : t) {
    if (!first) out << " + ";
    first = false;
    if (e.is_zero()) {
      out << c;
      continue;
    }
    if (c != 1) out << c << "*";
    out << "x";
    if (!(e == RationalExponent(e.prime(), 1))) out << "^" << e.to_string();
  }
  return out.str();
}

}  // namespace

PerfectionElement::PerfectionElement(std::int64_t p, Terms terms) : p_(p) {
  for (const auto& [e, c] : terms) {
    if (e.prime() != p) throw std::invalid_argument("PerfectionElement: exponent prime mismatch");
    if (e < RationalExponent(p, 0)) throw std::invalid_argument("PerfectionElement: negative exponent");
    add_into(terms_, e, c, p_);
  }
}

PerfectionElement PerfectionElement::constant(std::int64_t p, std::int64_t c) {
  return PerfectionElement(p, {{RationalExponent(p, 0), c}});
}

PerfectionElement PerfectionElement::monomial(const RationalExponent& e, std::int64_t c) {
  return PerfectionElement(e.prime(), {{e, c}});
}

PerfectionElement PerfectionElement::frobenius() const {
  PerfectionElement out(p_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e.times_p(), c);
  return out;
}

PerfectionElement PerfectionElement::frobenius_inverse() const {
  PerfectionElement out(p_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e.over_p(), c);
  return out;
}

PerfectionElement& PerfectionElement::operator+=(const PerfectionElement& o) {
  if (p_ != o.p_) throw std::invalid_argument("PerfectionElement: prime mismatch");
  for (const auto& [e, c] : o.terms_) add_into(terms_, e, c, p_);
  return *this;
}

PerfectionElement PerfectionElement::operator-() const {
  PerfectionElement out(p_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, p_ - c);
  return out;
}

PerfectionElement operator*(const PerfectionElement& a, const PerfectionElement& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("PerfectionElement: prime mismatch");
  PerfectionElement out(a.p_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) add_into(out.terms_, ea + eb, ca * cb, a.p_);
  return out;
}

std::string PerfectionElement::to_string() const { return terms_to_string(terms_); }

TruncatedWittElement::TruncatedWittElement(std::int64_t p, int precision) : p_(p), m_(precision) {
  if (precision < 1) throw std::invalid_argument("TruncatedWittElement: precision must be >= 1");
  Integer pm = aomega::pow(Integer(static_cast<long>(p)), static_cast<unsigned long>(precision));
  if (pm >= Integer(std::numeric_limits<std::int32_t>::max()))
    throw std::invalid_argument("TruncatedWittElement: p^m must stay below 2^31");
  pm_ = pm.get_si();
}

TruncatedWittElement::TruncatedWittElement(std::int64_t p, int precision, Terms terms)
    : TruncatedWittElement(p, precision) {
  for (const auto& [e, c] : terms) {
    if (e.prime() != p) throw std::invalid_argument("TruncatedWittElement: exponent prime mismatch");
    if (e < RationalExponent(p, 0)) throw std::invalid_argument("TruncatedWittElement: negative exponent");
    add_into(terms_, e, c, pm_);
  }
}

TruncatedWittElement TruncatedWittElement::constant(std::int64_t p, int precision, std::int64_t c) {
  return TruncatedWittElement(p, precision, {{RationalExponent(p, 0), c}});
}

void TruncatedWittElement::require_same(const TruncatedWittElement& o) const {
  if (p_ != o.p_ || m_ != o.m_)
    throw std::invalid_argument("TruncatedWittElement: mismatch (p=" + std::to_string(p_) + ", m=" +
                                std::to_string(m_) + " vs p=" + std::to_string(o.p_) + ", m=" +
                                std::to_string(o.m_) + ")");
}

PerfectionElement TruncatedWittElement::reduce() const {
  PerfectionElement::Terms t;
  for (const auto& [e, c] : terms_) t.emplace(e, c % p_);
  return PerfectionElement(p_, std::move(t));
}

TruncatedWittElement TruncatedWittElement::frobenius() const {
  TruncatedWittElement out(p_, m_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e.times_p(), c);
  return out;
}

TruncatedWittElement TruncatedWittElement::divide_by_p() const {
  if (m_ < 2) throw std::domain_error("divide_by_p: precision 1 has no room");
  TruncatedWittElement out(p_, m_ - 1);
  for (const auto& [e, c] : terms_) {
    if (c % p_ != 0) throw std::domain_error("divide_by_p: coefficient " + std::to_string(c) + " not divisible");
    add_into(out.terms_, e, c / p_, out.pm_);
  }
  return out;
}

TruncatedWittElement TruncatedWittElement::truncate(int precision) const {
  if (precision > m_) throw std::invalid_argument("truncate: cannot raise precision");
  TruncatedWittElement out(p_, precision);
  for (const auto& [e, c] : terms_) add_into(out.terms_, e, c, out.pm_);
  return out;
}

TruncatedWittElement TruncatedWittElement::pow(std::uint64_t e) const {
  TruncatedWittElement result = constant(p_, m_, 1), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

TruncatedWittElement& TruncatedWittElement::operator+=(const TruncatedWittElement& o) {
  require_same(o);
  for (const auto& [e, c] : o.terms_) add_into(terms_, e, c, pm_);
  return *this;
}

TruncatedWittElement TruncatedWittElement::operator-() const {
  TruncatedWittElement out(p_, m_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, pm_ - c);
  return out;
}

TruncatedWittElement operator*(const TruncatedWittElement& a, const TruncatedWittElement& b) {
  a.require_same(b);
  TruncatedWittElement out(a.p_, a.m_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) add_into(out.terms_, ea + eb, ca * cb % a.pm_, a.pm_);
  return out;
}

TruncatedWittElement operator*(std::int64_t c, const TruncatedWittElement& a) {
  TruncatedWittElement out(a.p_, a.m_);
  const std::int64_t cm = mod_floor(c, a.pm_);
  for (const auto& [e, x] : a.terms_) add_into(out.terms_, e, x * cm % a.pm_, a.pm_);
  return out;
}

std::string TruncatedWittElement::to_string() const { return terms_to_string(terms_); }

TruncatedWittElement teichmuller_lift(const PerfectionElement& a, int precision) {
  const std::int64_t p = a.prime();
  TruncatedWittElement out(p, precision);
  if (a.is_zero()) return out;
  // Lift of a^{1/p^{m-1}} with exponents over the common denominator p^den,
  // raised to p^{m-1} on integer exponents.
  int den = 0;
  for (const auto& [e, c] : a.terms()) den = std::max(den, e.den_pow() + precision - 1);
  // Exponents are non-negative integers here, so dense convolution works.
  using Dense = std::vector<std::int64_t>;
  const std::int64_t pm = out.modulus();
  Dense base;
  for (const auto& [e, c] : a.terms()) {
    const auto idx = static_cast<std::size_t>(e.scaled(den - precision + 1));
    if (base.size() <= idx) base.resize(idx + 1, 0);
    base[idx] = c;
  }
  auto mul = [pm](const Dense& x, const Dense& y) {
    Dense r(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] != 0) r[i + j] = (r[i + j] + x[i] * y[j]) % pm;
    }
    return r;
  };
  Dense result = base;
  for (int k = 1; k < precision; ++k) {
    Dense acc = result;
    for (std::int64_t i = 1; i < p; ++i) acc = mul(acc, result);
    result = std::move(acc);
  }
  TruncatedWittElement::Terms t;
  for (std::size_t e = 0; e < result.size(); ++e)
    if (result[e] != 0) t.emplace(RationalExponent(p, static_cast<std::int64_t>(e), den), result[e]);
  return TruncatedWittElement(p, precision, std::move(t));
}

std::vector<PerfectionElement> teichmuller_digits(const TruncatedWittElement& w) {
  std::vector<PerfectionElement> digits;
  TruncatedWittElement rest = w;
  for (int i = 0; i < w.precision(); ++i) {
    digits.push_back(rest.reduce());
    if (rest.precision() == 1) break;
    rest = (rest - teichmuller_lift(digits.back(), rest.precision())).divide_by_p();
  }
  return digits;
}

TruncatedWittElement digits_to_witt(const std::vector<PerfectionElement>& digits, std::int64_t p) {
  if (digits.empty()) throw std::invalid_argument("digits_to_witt: empty digit list");
  const int m = static_cast<int>(digits.size());
  TruncatedWittElement out(p, m);
  std::int64_t scale = 1;
  for (const auto& a : digits) {
    out += scale * teichmuller_lift(a, m);
    scale *= p;
  }
  return out;
}

}  // namespace aomega
