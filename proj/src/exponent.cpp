#include "aomega/exponent.hpp"

#include <stdexcept>

namespace aomega {

RationalExponent::RationalExponent(std::int64_t p, std::int64_t numerator, int den_pow)
    : p_(p), num_(numerator), den_pow_(den_pow) {
  if (p < 2) throw std::invalid_argument("RationalExponent: prime must be >= 2");
  if (den_pow < 0) {
    num_ *= ipow(p, static_cast<unsigned>(-den_pow));
    den_pow_ = 0;
  }
  if (num_ == 0) den_pow_ = 0;
  while (den_pow_ > 0 && num_ % p_ == 0) {
    num_ /= p_;
    --den_pow_;
  }
}

std::int64_t RationalExponent::scaled(int depth) const {
  if (den_pow_ > depth) {
    throw std::domain_error("exponent " + to_string() + " needs depth >= " +
                            std::to_string(den_pow_));
  }
  return num_ * ipow(p_, static_cast<unsigned>(depth - den_pow_));
}

Valuation RationalExponent::valuation() const {
  if (num_ == 0) return std::nullopt;
  return *aomega::p_valuation(Integer(static_cast<long>(num_)), p_) - den_pow_;
}

RationalExponent RationalExponent::operator+(const RationalExponent& o) const {
  if (p_ != o.p_) throw std::invalid_argument("RationalExponent: prime mismatch");
  const int k = std::max(den_pow_, o.den_pow_);
  return {p_, scaled(k) + o.scaled(k), k};
}

RationalExponent RationalExponent::operator-(const RationalExponent& o) const { return *this + (-o); }

std::strong_ordering operator<=>(const RationalExponent& a, const RationalExponent& b) {
  if (a.p_ != b.p_) return a.p_ <=> b.p_;
  const int k = std::max(a.den_pow_, b.den_pow_);
  return a.scaled(k) <=> b.scaled(k);
}

std::string RationalExponent::to_string() const {
  if (den_pow_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(ipow(p_, static_cast<unsigned>(den_pow_)));
}

}  // namespace aomega
