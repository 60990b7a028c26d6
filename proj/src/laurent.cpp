#include "aomega/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace aomega {

Laurent::Laurent(std::int64_t p, int depth) : p_(p), depth_(depth) {
  if (p < 2) throw std::invalid_argument("Laurent: prime must be >= 2");
  if (depth < 0) throw std::invalid_argument("Laurent: depth must be >= 0");
}

Laurent::Laurent(std::int64_t p, int depth, Terms terms) : Laurent(p, depth) {
  for (auto& [e, c] : terms) {
    if (c != 0) terms_.emplace(e, std::move(c));
  }
}

Laurent Laurent::constant(std::int64_t p, int depth, const Integer& c) {
  return monomial(p, depth, 0, c);
}

Laurent Laurent::monomial(std::int64_t p, int depth, std::int64_t exponent, const Integer& c) {
  Laurent out(p, depth);
  out.add_term(exponent, c);
  return out;
}

bool Laurent::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

bool Laurent::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Integer Laurent::coefficient(std::int64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::int64_t Laurent::min_exponent() const {
  if (terms_.empty()) throw std::domain_error("min_exponent of zero");
  return terms_.begin()->first;
}

std::int64_t Laurent::max_exponent() const {
  if (terms_.empty()) throw std::domain_error("max_exponent of zero");
  return terms_.rbegin()->first;
}

Integer Laurent::at_one() const {
  Integer s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

Laurent Laurent::substitute_power(std::int64_t factor) const {
  if (factor == 0) throw std::invalid_argument("substitute_power: factor 0");
  Laurent out(p_, depth_);
  for (const auto& [e, c] : terms_) out.add_term(e * factor, c);
  return out;
}

void Laurent::require_same_model(const Laurent& o, const char* op) const {
  if (p_ != o.p_ || depth_ != o.depth_) {
    std::ostringstream msg;
    msg << op << ": model mismatch (p=" << p_ << ", depth=" << depth_ << ") vs (p=" << o.p_
        << ", depth=" << o.depth_ << ")";
    throw std::invalid_argument(msg.str());
  }
}

void Laurent::add_term(std::int64_t e, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Laurent& Laurent::operator+=(const Laurent& o) {
  require_same_model(o, "laurent_add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  require_same_model(o, "laurent_sub");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  a.require_same_model(b, "laurent_mul");
  Laurent out(a.p_, a.depth_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

Laurent operator*(const Integer& c, const Laurent& a) {
  Laurent out(a.p_, a.depth_);
  if (c == 0) return out;
  for (const auto& [e, x] : a.terms_) out.terms_.emplace(e, c * x);
  return out;
}

Laurent laurent_mul(const Laurent& a, const Laurent& b) { return a * b; }

std::optional<Laurent> laurent_exact_div(const Laurent& a, const Laurent& b) {
  if (b.is_zero()) throw std::domain_error("laurent_exact_div: division by zero");
  a.require_same_model(b, "laurent_exact_div");
  Laurent quotient(a.prime(), a.depth());
  if (a.is_zero()) return quotient;

  // Write a = u^sa * A0 and b = u^sb * B0 with A0, B0 polynomials having a
  // nonzero constant term; then b | a iff B0 | A0 in Z[u], and the quotient is
  // the polynomial long-division quotient (integral at every step).
  const std::int64_t sa = a.min_exponent();
  const std::int64_t sb = b.min_exponent();
  const std::int64_t deg_b = b.max_exponent() - sb;
  const Integer& lead_b = b.terms().rbegin()->second;

  Laurent::Terms rem;
  for (const auto& [e, c] : a.terms()) rem.emplace(e - sa, c);
  Laurent::Terms q;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    const std::int64_t deg_r = top->first;
    if (deg_r < deg_b) return std::nullopt;
    if (!mpz_divisible_p(top->second.get_mpz_t(), lead_b.get_mpz_t())) return std::nullopt;
    const Integer c = top->second / lead_b;
    const std::int64_t shift = deg_r - deg_b;
    q.emplace(shift, c);
    for (const auto& [e, cb] : b.terms()) {
      const std::int64_t k = e - sb + shift;
      auto [it, inserted] = rem.try_emplace(k, -c * cb);
      if (!inserted) {
        it->second -= c * cb;
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  Laurent::Terms shifted;
  for (auto& [e, c] : q) shifted.emplace(e + sa - sb, std::move(c));
  return Laurent(a.prime(), a.depth(), std::move(shifted));
}

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "u";
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

}  // namespace aomega
