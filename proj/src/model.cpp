#include "aomega/model.hpp"

#include <stdexcept>
#include <string>

namespace aomega {

AinfModel::AinfModel(std::int64_t p, int depth) : p_(p), depth_(depth) {
  if (!is_prime(p)) throw std::invalid_argument("AinfModel: p=" + std::to_string(p) + " is not prime");
  if (depth < 1) throw std::invalid_argument("AinfModel: depth must be >= 1");
  q_exp_ = ipow(p, static_cast<unsigned>(depth));
}

Laurent AinfModel::q_power(const RationalExponent& a) const {
  if (a.prime() != p_) throw std::invalid_argument("q_power: exponent prime mismatch");
  return Laurent::monomial(p_, depth_, a.scaled(depth_));
}

Laurent AinfModel::mu() const { return q() - one(); }

Laurent AinfModel::xi() const {
  // Phi_{p^n}(u) = sum_{i<p} u^{i p^{n-1}}
  const std::int64_t step = q_exp_ / p_;
  Laurent out = zero();
  for (std::int64_t i = 0; i < p_; ++i) out += Laurent::monomial(p_, depth_, i * step);
  return out;
}

Laurent AinfModel::xi_tilde() const {
  Laurent out = zero();
  for (std::int64_t i = 0; i < p_; ++i) out += Laurent::monomial(p_, depth_, i * q_exp_);
  return out;
}

Laurent AinfModel::phi_inverse_mu() const { return eps_power_minus_one(RationalExponent(p_, 1, 1)); }

Laurent AinfModel::eps_power_minus_one(const RationalExponent& a) const {
  return q_power(a) - one();
}

Laurent q_analog(const RationalExponent& a, const AinfModel& model) {
  if (!a.is_integral()) {
    throw std::domain_error("q_analog: exponent " + a.to_string() +
                            " is not integral; use eps_power_minus_one for q^a - 1");
  }
  return q_analog(a.numerator(), model);
}

Laurent q_analog(std::int64_t a, const AinfModel& model) {
  // a > 0: 1 + q + ... + q^{a-1};  a < 0: -(q^{-1} + ... + q^{a})
  Laurent out = model.zero();
  const std::int64_t e = model.q_exponent();
  if (a > 0) {
    for (std::int64_t i = 0; i < a; ++i) out += Laurent::monomial(model.prime(), model.depth(), i * e);
  } else {
    for (std::int64_t i = a; i < 0; ++i) out -= Laurent::monomial(model.prime(), model.depth(), i * e);
  }
  return out;
}

}  // namespace aomega
