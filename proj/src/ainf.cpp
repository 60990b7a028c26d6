#include "aomega/ainf.hpp"

#include <iterator>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "aomega/fp_poly.hpp"

namespace aomega {

Laurent phi(const Laurent& x) { return x.substitute_power(x.prime()); }

Laurent phi_inverse(const Laurent& x, int max_depth) {
  if (x.depth() + 1 > max_depth)
    throw std::domain_error("phi_inverse: depth " + std::to_string(x.depth() + 1) + " exceeds maximum " +
                            std::to_string(max_depth));
  return x.with_depth(x.depth() + 1);
}

Laurent embed(const Laurent& x, int depth) {
  if (depth < x.depth()) throw std::invalid_argument("embed: target depth below source depth");
  return x.substitute_power(ipow(x.prime(), static_cast<unsigned>(depth - x.depth()))).with_depth(depth);
}

Cyclotomic theta(const Laurent& x) { return Cyclotomic::reduce(x, x.depth()); }

Cyclotomic theta_tilde(const Laurent& x) { return Cyclotomic::reduce(phi_inverse(x, x.depth() + 1), x.depth() + 1); }

Laurent reduce_mod_mu(const Laurent& x) {
  const std::int64_t period = ipow(x.prime(), static_cast<unsigned>(x.depth()));
  Laurent::Terms t;
  for (const auto& [e, c] : x.terms()) t[mod_floor(e, period)] += c;
  return Laurent(x.prime(), x.depth(), std::move(t));
}

namespace {

std::int64_t totient(std::int64_t m) {
  std::int64_t out = m;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    while (m % q == 0) m /= q;
    out -= out / q;
  }
  if (m > 1) out -= out / m;
  return out;
}

bool is_prime_power_of(std::int64_t m, std::int64_t p) {
  while (m % p == 0) m /= p;
  return m == 1;
}

// Phi_m(u) at the given model, memoized per (p, depth).
const Laurent& cyclotomic_m(std::int64_t m, std::int64_t p, int depth, std::map<std::int64_t, Laurent>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  Laurent f = Laurent::monomial(p, depth, m) - Laurent::constant(p, depth, 1);
  for (std::int64_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    f = *laurent_exact_div(f, cyclotomic_m(d, p, depth, memo));
  }
  return memo.emplace(m, std::move(f)).first->second;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  __int128 r = 1, x = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

// Cheap sieve for Phi_m | x: evaluate x at a primitive m-th root of unity in
// F_l with l = 1 mod m. Nonzero value rules the factor out.
struct RootOfUnity {
  std::int64_t ell = 0, omega = 0;
};

RootOfUnity find_root_of_unity(std::int64_t m) {
  std::int64_t ell = 0;
  for (std::int64_t k = (1LL << 30) / m; k < (1LL << 31) / m; ++k) {
    if (is_prime(k * m + 1)) {
      ell = k * m + 1;
      break;
    }
  }
  if (ell == 0) return {};
  // Primitive root of unity of order m: g^{(l-1)/m} for g of full order;
  // testing order exactly m on candidates is enough.
  std::int64_t omega = 0;
  for (std::int64_t g = 2; g < ell && omega == 0; ++g) {
    const std::int64_t w = powmod(g, (ell - 1) / m, ell);
    bool primitive = w != 1 || m == 1;
    for (std::int64_t q = 2, r = m; primitive && q <= r; ++q) {
      if (r % q != 0) continue;
      while (r % q == 0) r /= q;
      if (powmod(w, m / q, ell) == 1) primitive = false;
    }
    if (primitive) omega = w;
  }
  return {ell, omega};
}

bool may_have_factor(const Laurent& x, std::int64_t m) {
  static std::map<std::int64_t, RootOfUnity> roots;
  static std::mutex mutex;
  RootOfUnity root;
  {
    std::lock_guard lock(mutex);
    auto it = roots.find(m);
    if (it == roots.end()) it = roots.emplace(m, find_root_of_unity(m)).first;
    root = it->second;
  }
  if (root.ell == 0) return true;
  const std::int64_t ell = root.ell, omega = root.omega;
  __int128 acc = 0;
  for (const auto& [e, c] : x.terms()) {
    Integer cm = c % Integer(static_cast<long>(ell));
    acc = (acc + static_cast<__int128>(cm.get_si()) * powmod(omega, mod_floor(e, m), ell)) % ell;
  }
  return acc == 0;
}

// (u - 1)^k over F_p via Lucas' theorem.
FpPoly u_minus_one_power(std::int64_t p, std::int64_t k) {
  std::vector<std::int64_t> fact(static_cast<std::size_t>(p), 1);
  for (std::int64_t i = 1; i < p; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i % p;
  auto small_binom = [&](std::int64_t n, std::int64_t r) -> std::int64_t {
    if (r > n) return 0;
    return fact[static_cast<std::size_t>(n)] *
           mod_inverse(fact[static_cast<std::size_t>(r)] * fact[static_cast<std::size_t>(n - r)] % p, p) % p;
  };
  std::vector<std::int64_t> c(static_cast<std::size_t>(k + 1));
  for (std::int64_t i = 0; i <= k; ++i) {
    std::int64_t b = 1;
    for (std::int64_t n = k, r = i; b != 0 && (n > 0 || r > 0); n /= p, r /= p) b = b * small_binom(n % p, r % p) % p;
    c[static_cast<std::size_t>(i)] = ((k - i) % 2 == 0) ? b : p - b;
  }
  return FpPoly(p, std::move(c));
}

}  // namespace

namespace {

Laurent strip_uncached(const Laurent& x) {
  const std::int64_t p = x.prime();
  const int depth = x.depth();
  Laurent y = x * Laurent::monomial(p, depth, -x.min_exponent());
  if (y.is_constant()) return y;
  // Binomials +-(u^A - 1): the p-power cyclotomic part is u^{p^{v_p(A)}} - 1.
  if (y.size() == 2) {
    const Integer& c0 = y.coefficient(0);
    const std::int64_t a = y.max_exponent();
    if ((c0 == 1 || c0 == -1) && y.coefficient(a) == -c0) {
      const std::int64_t v = *p_valuation(Integer(static_cast<long>(a)), p);
      Laurent out = Laurent::monomial(p, depth, ipow(p, static_cast<unsigned>(v))) - Laurent::constant(p, depth, 1);
      return c0 == -1 ? out : -out;
    }
  }
  // c (u^{rM} - 1)/(u^M - 1) keeps c (u^{p^{v(rM)}} - 1)/(u^{p^{v(M)}} - 1).
  if (y.size() >= 2) {
    const auto& terms = y.terms();
    const Integer& c0 = terms.begin()->second;
    const std::int64_t step = std::next(terms.begin())->first;
    const auto r = static_cast<std::int64_t>(y.size());
    bool geometric = (c0 == 1 || c0 == -1) && y.max_exponent() == (r - 1) * step;
    for (auto it = terms.begin(); geometric && it != terms.end(); ++it) geometric = it->second == c0 && it->first % step == 0;
    if (geometric) {
      const std::int64_t inner = ipow(p, static_cast<unsigned>(*p_valuation(Integer(static_cast<long>(step)), p)));
      const std::int64_t count = ipow(p, static_cast<unsigned>(*p_valuation(Integer(static_cast<long>(r)), p)));
      Laurent::Terms out;
      for (std::int64_t i = 0; i < count; ++i) out[i * inner] = c0;
      return Laurent(p, depth, std::move(out));
    }
  }
  std::map<std::int64_t, Laurent> memo;
  const std::int64_t deg = y.max_exponent();
  // phi(m) >= m/6 in the range this can be asked about.
  for (std::int64_t m = 2; m <= 6 * deg + 6; ++m) {
    if (is_prime_power_of(m, p) || totient(m) > y.max_exponent()) continue;
    while (y.max_exponent() >= totient(m) && may_have_factor(y, m)) {
      auto q = laurent_exact_div(y, cyclotomic_m(m, p, depth, memo));
      if (!q) break;
      y = *q;
    }
  }
  return y;
}

}  // namespace

Laurent strip_prime_to_p_factors(const Laurent& x) {
  if (x.is_zero()) throw std::domain_error("strip_prime_to_p_factors: zero element");
  using Key = std::tuple<std::int64_t, int, Laurent::Terms>;
  static std::map<Key, Laurent> cache;
  static std::mutex mutex;
  Key key{x.prime(), x.depth(), x.terms()};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Laurent out = strip_uncached(x);
  std::lock_guard lock(mutex);
  if (cache.size() > 4096) cache.clear();
  cache.emplace(std::move(key), out);
  return out;
}

bool ainf_divides(const Laurent& b, const Laurent& a) {
  if (b.is_zero()) return a.is_zero();
  if (a.is_zero()) return true;
  return divides(strip_prime_to_p_factors(b), a);
}

Report check_notation_identities(const AinfModel& model, const NotationCheckOptions& options) {
  const std::int64_t p = model.prime();
  const int n = model.depth();
  Report report("notation p=" + std::to_string(p) + " n=" + std::to_string(n));

  const Laurent mu = model.mu(), xi = model.xi(), xi_t = model.xi_tilde();

  // Kernels of theta and theta_tilde, and the shape of xi.
  report.add("kernels: xi = Phi_{p^n}(u)", xi == cyclotomic_polynomial(p, n, n));
  report.add("kernels: xi * (q^{1/p} - 1) = mu", xi * model.phi_inverse_mu() == mu);
  report.add("kernels: xi_tilde = phi(xi)", phi(xi) == xi_t);
  report.add("kernels: theta(xi) = 0", theta(xi).is_zero());
  report.add("kernels: theta_tilde(xi_tilde) = 0", theta_tilde(xi_t).is_zero());
  report.add("kernels: theta(q) = 1", theta(model.q()) == Cyclotomic::constant(p, n, 1));

  // Sampled pairs with v_p(a) <= v_p(b).
  {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> den(0, n);
    std::uniform_int_distribution<std::int64_t> unit(1, 2 * p);
    std::uniform_int_distribution<std::int64_t> num(-2 * p, 2 * p);
    int failures = 0;
    int genuine = 0;
    std::string witness;
    for (int s = 0; s < options.samples; ++s) {
      const int j = den(rng);
      std::int64_t k = unit(rng);
      while (k % p == 0) ++k;
      if (rng() & 1) k = -k;
      std::uniform_int_distribution<int> den_b(0, j);
      const RationalExponent a(p, k, j);
      const RationalExponent b(p, s == 0 ? 0 : num(rng), den_b(rng));
      const Laurent ga = model.eps_power_minus_one(a), gb = model.eps_power_minus_one(b);
      bool ok = ainf_divides(ga, gb);
      // Integral ratio b/a: the quotient already exists in Z[u^{+-1}].
      const std::int64_t sa = a.scaled(n), sb = b.scaled(n);
      if (sb % sa == 0) {
        ++genuine;
        auto c = laurent_exact_div(gb, ga);
        ok = ok && c && *c * ga == gb;
      }
      if (!ok) {
        ++failures;
        if (witness.empty()) witness = "a=" + a.to_string() + " b=" + b.to_string();
      }
    }
    report.add("divisibility: q^a - 1 | q^b - 1 for v_p(a) <= v_p(b)", failures == 0,
               std::to_string(options.samples) + " pairs, " + std::to_string(genuine) + " with integral ratio" +
                   (witness.empty() ? "" : "; first failure " + witness));
  }

  // Congruences modulo mu.
  {
    bool ok = true;
    std::string witness;
    for (std::int64_t a = -12; a <= 12; ++a) {
      if (reduce_mod_mu(q_analog(a, model)) != model.constant(a)) {
        ok = false;
        witness = "a=" + std::to_string(a);
        break;
      }
    }
    report.add("mod mu: [a]_q = a mod mu, |a| <= 12", ok, witness);
    const Laurent r = reduce_mod_mu(xi_t);
    report.add("mod mu: xi_tilde = p mod mu", r == model.constant(p), "xi_tilde mod mu = " + r.to_string());
  }

  // Mu = prod_{i<k} phi^{-i}(xi) * phi^{-k}(mu), all k <= n, inside A_{n+k}.
  for (int k = 1; k <= n; ++k) {
    const int top = n + k;
    Laurent prod = embed(mu, top);
    Laurent rhs(p, top);
    rhs = Laurent::constant(p, top, 1);
    Laurent cur = xi;
    for (int i = 0; i < k; ++i) {
      rhs = rhs * embed(cur, top);
      cur = phi_inverse(cur, top);
    }
    Laurent mu_k = mu;
    for (int i = 0; i < k; ++i) mu_k = phi_inverse(mu_k, top);
    rhs = rhs * mu_k;
    report.add("product: product formula k=" + std::to_string(k), rhs == prod);
  }

  // P is a nonzerodivisor mod g iff g is primitive (Gauss); g is a
  // nonzerodivisor mod p iff g is nonzero in the domain F_p[u^{+-1}].
  auto content = [](const Laurent& g) {
    Integer c = 0;
    for (const auto& [e, v] : g.terms()) c = gcd(c, v);
    return c;
  };
  for (const auto& [name, g] : {std::pair<const char*, Laurent>{"mu", mu}, {"xi", xi}, {"xi_tilde", xi_t}}) {
    report.add(std::string("regularity: p regular mod ") + name, content(g) == 1);
    report.add(std::string("regularity: ") + name + " regular mod p", !FpPoly::unit_normalized(g, p).is_zero());
  }

  // A_n/mu embeds in prod_{k<=n} Z[zeta_{p^k}], so xi_tilde is regular
  // mod mu iff its image in every factor is nonzero; A_n/xi_tilde is the
  // domain Z[zeta_{p^{n+1}}].
  {
    bool ok = true;
    for (int k = 0; k <= n; ++k) ok = ok && !Cyclotomic::reduce(xi_t, k).is_zero();
    report.add("regularity: xi_tilde regular mod mu", ok);
    report.add("regularity: mu regular mod xi_tilde", !Cyclotomic::reduce(mu, n + 1).is_zero());
  }

  // (7) (xi_tilde, mu) = (p, mu), then powers modulo p: every generator is a
  // power of (u - 1) times a unit in F_p[u^{+-1}].
  {
    report.add("ideals: (xi_tilde, mu) = (p, mu)", divides(mu, xi_t - model.constant(p)));
    const std::pair<const char*, Laurent> gens[] = {{"xi", xi}, {"xi_tilde", xi_t}, {"mu", mu}};
    std::ostringstream detail;
    bool ok = true;
    std::map<std::string, std::int64_t> power_of_u_minus_1;
    for (const auto& [gname, g] : gens) {
      const FpPoly gbar = FpPoly::unit_normalized(g, p);
      const std::int64_t k = gbar.degree();
      const bool is_power = gbar == u_minus_one_power(p, k);
      ok = ok && is_power;
      power_of_u_minus_1[gname] = k;
      detail << gname << " = (u-1)^" << k << (is_power ? "" : " FAILED") << " mod p; ";
    }
    for (const auto& [gname, kg] : power_of_u_minus_1) {
      for (const auto& [hname, kh] : power_of_u_minus_1) {
        if (gname == hname) continue;
        detail << hname << "^" << (kg + kh - 1) / kh << " in (p," << gname << "); ";
      }
    }
    report.add("ideals: (p,xi), (p,xi_tilde), (p,mu) share a radical", ok, detail.str());
  }
  return report;
}

}  // namespace aomega
