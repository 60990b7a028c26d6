#pragma once

#include <cstdint>

#include "aomega/exponent.hpp"
#include "aomega/laurent.hpp"

namespace aomega {

/// Depth-n cyclotomic model of A_inf: the ring Z[u^{+-1}] with q = u^(p^n).
/// mu = q - 1, xi = Phi_{p^n}(u) = (q - 1)/(q^{1/p} - 1), xi_tilde = 1 + q + ... + q^{p-1}.
class AinfModel {
 public:
  AinfModel(std::int64_t p, int depth);

  std::int64_t prime() const { return p_; }
  int depth() const { return depth_; }
  /// p^depth, the u-exponent of q.
  std::int64_t q_exponent() const { return q_exp_; }

  Laurent zero() const { return Laurent(p_, depth_); }
  Laurent one() const { return constant(1); }
  Laurent constant(const Integer& c) const { return Laurent::constant(p_, depth_, c); }
  Laurent u() const { return Laurent::monomial(p_, depth_, 1); }
  Laurent q() const { return Laurent::monomial(p_, depth_, q_exp_); }
  Laurent q_power(const RationalExponent& a) const;
  Laurent mu() const;
  Laurent xi() const;
  Laurent xi_tilde() const;
  /// phi^{-1}(mu) = q^{1/p} - 1.
  Laurent phi_inverse_mu() const;

  /// [eps^a] - 1 = q^a - 1 for any a in p^{-depth} Z.
  Laurent eps_power_minus_one(const RationalExponent& a) const;

  friend bool operator==(const AinfModel&, const AinfModel&) = default;

 private:
  std::int64_t p_;
  int depth_;
  std::int64_t q_exp_;
};

/// (q^a - 1)/(q - 1) for integral a; throws std::domain_error for nonintegral
/// a (use AinfModel::eps_power_minus_one for those).
Laurent q_analog(const RationalExponent& a, const AinfModel& model);
Laurent q_analog(std::int64_t a, const AinfModel& model);

}  // namespace aomega
