#pragma once

#include <cstdint>
#include <optional>

#include "aomega/cyclotomic.hpp"
#include "aomega/laurent.hpp"
#include "aomega/model.hpp"
#include "aomega/report.hpp"

namespace aomega {

inline constexpr int kMaxDepth = 8;

/// Frobenius u -> u^p, same depth.
Laurent phi(const Laurent& x);
/// Inverse Frobenius: the same coefficient map read at depth + 1.
/// Throws std::domain_error past max_depth.
Laurent phi_inverse(const Laurent& x, int max_depth = kMaxDepth);
/// The inclusion A_n -> A_{n+k} (u -> u^{p^k}); keeps q fixed.
Laurent embed(const Laurent& x, int depth);

/// u -> zeta_{p^n} where n is the depth of x.
Cyclotomic theta(const Laurent& x);
/// theta o phi^{-1}: lands in Z[zeta_{p^{n+1}}].
Cyclotomic theta_tilde(const Laurent& x);

/// Strips every cyclotomic factor Phi_m (m not a power of p) from x. Those
/// factors are units in A_inf, so the result generates the same ideal there.
Laurent strip_prime_to_p_factors(const Laurent& x);
/// Divisibility b | a in the localization of Z[u^{+-1}] at the non-p-power
/// cyclotomic polynomials (the model's stand-in for A_inf divisibility).
bool ainf_divides(const Laurent& b, const Laurent& a);

/// Reduction modulo mu: fold exponents modulo p^n, i.e. the image in
/// Z[u]/(u^{p^n} - 1), returned as a Laurent with exponents in [0, p^n).
Laurent reduce_mod_mu(const Laurent& x);

struct NotationCheckOptions {
  int samples = 50;
  std::uint64_t seed = 1;
};

/// Executable forms of the properties of mu, xi, xi_tilde.
Report check_notation_identities(const AinfModel& model, const NotationCheckOptions& options = {});

}  // namespace aomega
