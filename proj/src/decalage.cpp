#include "aomega/decalage.hpp"

#include <algorithm>
#include <stdexcept>

namespace aomega {

namespace {

const IntegerRing Z{};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) { return multiply(Z, a, b); }

IntMatrix divide_entries(const IntMatrix& a, const Integer& f) {
  IntMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j) % f != 0) throw std::logic_error("divide_entries: entry not divisible");
      out.at(i, j) = a.at(i, j) / f;
    }
  return out;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  return block(Z, a, int_matrix(a.rows(), b.cols()), int_matrix(b.rows(), a.cols()), b);
}

IntMatrix solve_or_throw(const IntMatrix& basis, const IntMatrix& y, const char* what) {
  auto x = solve_columns(basis, y);
  if (!x) throw std::logic_error(std::string(what) + ": vectors outside the lattice");
  return *x;
}

// P_i of eta_data, or the empty basis when the degree is outside the complex.
IntMatrix lattice_at(const EtaData& e, int i) {
  auto it = e.lattice.find(i);
  return it == e.lattice.end() ? int_matrix(0, 0) : it->second;
}

bool is_prime_power(const Integer& f) {
  if (f < 2) return false;
  Integer n = f;
  for (Integer q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    while (n % q == 0) n /= q;
    return n == 1;
  }
  return true;
}

HomologyGroup<Integer> formula_group(const HomologyGroup<Integer>& g, const Integer& f) {
  HomologyGroup<Integer> out;
  out.free_rank = g.free_rank;
  for (const auto& e : g.torsion) out.torsion.push_back(e / gcd(e, f));
  out.torsion = invariant_factors(out.torsion);
  return out;
}

void compare_presentations(Report& r, const std::string& label, int lo, int hi, const HomologyPresentation<Integer>& a,
                           const HomologyPresentation<Integer>& b) {
  for (int i = lo; i <= hi; ++i) {
    const bool ok = a.at(i) == b.at(i);
    r.add(label + " H^" + std::to_string(i), ok, group_to_string(a.at(i)) + " vs " + group_to_string(b.at(i)));
  }
}

int range_lo(const IntComplex& k) { return k.empty() ? 0 : k.lo(); }
int range_hi(const IntComplex& k) { return k.empty() ? -1 : k.hi(); }

}  // namespace

EtaData eta_data(const IntComplex& k, const Integer& f) {
  if (f == 0) throw std::invalid_argument("eta_subcomplex: f must be nonzero");
  const Integer fa = abs(f);
  EtaData e{IntComplex(k.ring(), k.lo(), {}, {}), fa, {}};
  if (k.empty()) return e;
  for (int i = k.lo(); i <= k.hi(); ++i) e.lattice[i] = preimage(k.differential(i), int_identity(k.rank(i + 1), fa));
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> diffs;
  for (int i = k.lo(); i <= k.hi(); ++i) ranks.push_back(e.lattice[i].cols());
  for (int i = k.lo(); i < k.hi(); ++i) {
    const IntMatrix image = divide_entries(mul(k.differential(i), e.lattice[i]), fa);
    diffs.push_back(solve_or_throw(e.lattice[i + 1], image, "eta_subcomplex"));
  }
  e.complex = IntComplex(k.ring(), k.lo(), std::move(ranks), std::move(diffs));
  return e;
}

IntComplex eta_subcomplex(const IntComplex& k, const Integer& f) { return eta_data(k, f).complex; }

IntMap eta_map(const IntMap& alpha, const EtaData& source, const EtaData& target) {
  IntMap out{source.complex, target.complex, {}};
  for (const auto& [i, p] : source.lattice) {
    if (target.complex.rank(i) == 0 || p.cols() == 0) continue;
    out.components[i] = solve_or_throw(lattice_at(target, i), mul(alpha.at(i), p), "eta_map");
  }
  return out;
}

BocksteinComplex bockstein(const IntComplex& k, const Integer& f) {
  if (!is_prime_power(f)) throw std::invalid_argument("bockstein: f must be a prime power, got " + f.get_str());
  BocksteinComplex b;
  b.f = f;
  b.lo = range_lo(k);
  b.hi = range_hi(k);
  for (int i = b.lo; i <= b.hi; ++i) {
    b.cycles[i] = preimage(k.differential(i), int_identity(k.rank(i + 1), f));
    b.boundaries[i] = hconcat(k.differential(i - 1), int_identity(k.rank(i), f));
    b.groups[i] = quotient_group(b.cycles[i], b.boundaries[i]);
  }
  for (int i = b.lo; i < b.hi; ++i)
    b.beta[i] = solve_or_throw(b.cycles[i + 1], divide_entries(mul(k.differential(i), b.cycles[i]), f), "bockstein");
  return b;
}

namespace {

// beta^i as vectors of K^{i+1}; empty rows past the top degree.
IntMatrix beta_image(const BocksteinComplex& b, int i) {
  auto it = b.beta.find(i);
  if (it == b.beta.end()) return int_matrix(0, b.cycles.count(i) ? b.cycles.at(i).cols() : 0);
  return mul(b.cycles.at(i + 1), it->second);
}

}  // namespace

bool BocksteinComplex::beta_is_zero(int degree) const {
  if (!beta.count(degree)) return true;
  return lattice_contains(boundaries.at(degree + 1), beta_image(*this, degree));
}

bool BocksteinComplex::beta_squared_zero() const {
  for (int i = lo; i + 2 <= hi; ++i) {
    const IntMatrix twice = mul(cycles.at(i + 2), mul(beta.at(i + 1), beta.at(i)));
    if (!lattice_contains(boundaries.at(i + 2), twice)) return false;
  }
  return true;
}

HomologyPresentation<Integer> BocksteinComplex::homology() const {
  HomologyPresentation<Integer> h;
  for (int i = lo; i <= hi; ++i) {
    const IntMatrix& z = cycles.at(i);
    IntMatrix kernel = z;
    if (beta.count(i)) kernel = mul(z, preimage(beta_image(*this, i), boundaries.at(i + 1)));
    IntMatrix image = boundaries.at(i);
    if (beta.count(i - 1)) image = hconcat(beta_image(*this, i - 1), image);
    h.groups[i] = quotient_group(kernel, image);
  }
  h.prune();
  return h;
}

Report check_leta_mod_f_is_bockstein(const IntComplex& k, const Integer& f) {
  Report r("leta mod f vs bockstein f=" + f.get_str());
  const auto b = bockstein(k, f);
  r.add("beta o beta = 0", b.beta_squared_zero());
  const auto lhs = canonical(homology_mod(eta_subcomplex(k, f), f));
  const auto rhs = canonical(b.homology());
  compare_presentations(r, "L eta (x) Z/f vs (H(K/f), beta)", range_lo(k), range_hi(k), lhs, rhs);
  return r;
}

Report check_homology_formula(const IntComplex& k, const Integer& f) {
  Report r("homology formula f=" + f.get_str());
  const auto hk = homology_snf(k);
  HomologyPresentation<Integer> expected;
  for (const auto& [i, g] : hk.groups) expected.groups[i] = formula_group(g, abs(f));
  expected.prune();
  const auto actual = canonical(homology_snf(eta_subcomplex(k, f)));
  compare_presentations(r, "H(L eta K) vs H(K)/H(K)[f]", range_lo(k), range_hi(k), actual, canonical(expected));
  return r;
}

Report check_composition(const IntComplex& k, const Integer& f, const Integer& g) {
  Report r("composition f=" + f.get_str() + " g=" + g.get_str());
  const auto lhs = canonical(homology_snf(eta_subcomplex(eta_subcomplex(k, g), f)));
  const auto rhs = canonical(homology_snf(eta_subcomplex(k, f * g)));
  compare_presentations(r, "L eta_f L eta_g vs L eta_fg", range_lo(k), range_hi(k), lhs, rhs);
  return r;
}

TrianglePair cone_triangle(const IntMap& alpha) {
  if (!is_chain_map(alpha)) throw std::invalid_argument("cone_triangle: alpha is not a chain map");
  TrianglePair t{alpha.source, alpha.target, cone(alpha), alpha, {}, {}};
  t.beta = IntMap{t.l, t.m, {}};
  for (int i = range_lo(t.m); i <= range_hi(t.m); ++i) {
    t.beta.components[i] = block(Z, int_matrix(t.k.rank(i + 1), 0), int_matrix(t.k.rank(i + 1), t.l.rank(i)),
                                 int_matrix(t.l.rank(i), 0), int_identity(t.l.rank(i)));
    // h: K^{i+1} -> M^i = K^{i+1} + L^i, the inclusion of the first summand.
    t.homotopy[i + 1] = block(Z, int_identity(t.k.rank(i + 1)), int_matrix(t.k.rank(i + 1), 0),
                              int_matrix(t.l.rank(i), t.k.rank(i + 1)), int_matrix(t.l.rank(i), 0));
  }
  return t;
}

bool homotopy_is_valid(const TrianglePair& t) {
  auto h = [&t](int i) {
    auto it = t.homotopy.find(i);
    return it != t.homotopy.end() ? it->second : int_matrix(t.m.rank(i - 1), t.k.rank(i));
  };
  const int lo = std::min(range_lo(t.k), range_lo(t.m)) - 1, hi = std::max(range_hi(t.k), range_hi(t.m)) + 1;
  for (int i = lo; i <= hi; ++i) {
    const IntMatrix lhs = mul(t.beta.at(i), t.alpha.at(i));
    const IntMatrix rhs = add(Z, mul(t.m.differential(i - 1), h(i)), mul(h(i + 1), t.k.differential(i)));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

ExactnessOutcome check_exactness_criterion(const TrianglePair& t, const Integer& f) {
  ExactnessOutcome out{false, Report("exactness criterion f=" + f.get_str())};
  Report& r = out.report;
  r.add("homotopy K -> L -> M null", homotopy_is_valid(t));
  bool all_zero = true;
  for (int i = range_lo(t.m); i <= range_hi(t.m); ++i) {
    const IntMatrix z = preimage(t.m.differential(i), int_identity(t.m.rank(i + 1), f));
    IntMatrix proj = int_matrix(t.k.rank(i + 1), z.cols());
    for (std::size_t a = 0; a < proj.rows(); ++a)
      for (std::size_t c = 0; c < z.cols(); ++c) proj.at(a, c) = z.at(a, c);
    const IntMatrix bnd = hconcat(t.k.differential(i), int_identity(t.k.rank(i + 1), f));
    const bool zero = lattice_contains(bnd, proj);
    all_zero = all_zero && zero;
    r.add("boundary H^" + std::to_string(i) + "(M/f) -> H^" + std::to_string(i + 1) + "(K/f)", true,
          zero ? "zero" : "nonzero");
  }
  if (!all_zero) {
    r.add("hypothesis", true, "a boundary map is nonzero; criterion not applicable");
    return out;
  }
  out.applicable = true;
  const EtaData ek = eta_data(t.k, f), el = eta_data(t.l, f), em = eta_data(t.m, f);
  const IntMap ea = eta_map(t.alpha, ek, el);
  const IntComplex c = cone(ea);
  IntMap iota{c, em.complex, {}};
  bool solvable = true;
  for (int i = range_lo(c); i <= range_hi(c); ++i) {
    if (c.rank(i) == 0) continue;
    const IntMatrix kpart = scale(Z, Integer(f), lattice_at(ek, i + 1));
    const IntMatrix src = block_diagonal(kpart, lattice_at(el, i));
    auto x = solve_columns(lattice_at(em, i), src);
    if (!x) {
      solvable = false;
      break;
    }
    iota.components[i] = *x;
  }
  r.add("cone(eta alpha) lies in eta(M)", solvable);
  if (!solvable) return out;
  r.add("comparison is a chain map", is_chain_map(iota));
  const auto h = homology_snf(cone(iota));
  r.add("comparison is a quasi-isomorphism", h.is_zero(), presentation_to_string(h));
  return out;
}

Report check_mod_g_commutation(const IntComplex& k, const Integer& f, const Integer& g) {
  Report r("mod g commutation f=" + f.get_str() + " g=" + g.get_str());
  if (!is_prime_power(f) || !is_prime_power(g) || gcd(f, g) != 1)
    throw std::invalid_argument("check_mod_g_commutation: f and g must be coprime prime powers");
  const auto hf = canonical(homology_mod(k, f));
  bool torsion_free = true;
  for (const auto& [i, grp] : hf.groups)
    for (const auto& e : grp.torsion) torsion_free = torsion_free && gcd(e, g) == 1;
  r.add("H(K/f) has no g-torsion", torsion_free, presentation_to_string(hf));
  if (!torsion_free) return r;
  const auto lhs = canonical(homology_mod(eta_subcomplex(k, f), g));
  const auto rhs = canonical(homology_snf(eta_subcomplex(cone(multiplication_map(k, g)), f)));
  compare_presentations(r, "L eta_f(K)/g vs L eta_f(K/g)", range_lo(k) - 1, range_hi(k), lhs, rhs);
  return r;
}

LetaInverseMaps leta_inverse_maps(const IntComplex& k, const Integer& f, int d) {
  if (!k.empty() && (k.lo() < 0 || k.hi() > d))
    throw std::invalid_argument("leta_inverse_maps: complex must sit in degrees [0, " + std::to_string(d) + "]");
  for (const auto& e : homology_snf(k).at(0).torsion)
    if (gcd(e, f) != 1) throw std::domain_error("leta_inverse_maps: H^0 has f-torsion");
  const EtaData e = eta_data(k, f);
  LetaInverseMaps out{IntMap{e.complex, k, {}}, IntMap{k, e.complex, {}}, Report("leta inverse maps d=" + std::to_string(d))};
  const Integer fd = pow(abs(f), static_cast<unsigned long>(d));
  for (const auto& [i, p] : e.lattice) {
    const Integer fi = pow(abs(f), static_cast<unsigned long>(i));
    out.map_in.components[i] = scale(Z, fi, p);
    out.map_out.components[i] =
        solve_or_throw(p, int_identity(k.rank(i), pow(abs(f), static_cast<unsigned long>(d - i))), "leta_inverse_maps");
  }
  out.check.add("inclusion is a chain map", is_chain_map(out.map_in));
  out.check.add("f^d map is a chain map", is_chain_map(out.map_out));
  bool in_out = true, out_in = true;
  for (const auto& [i, p] : e.lattice) {
    in_out = in_out && mul(out.map_in.at(i), out.map_out.at(i)) == int_identity(k.rank(i), fd);
    out_in = out_in && mul(out.map_out.at(i), out.map_in.at(i)) == int_identity(e.complex.rank(i), fd);
  }
  out.check.add("K -> eta K -> K is f^d", in_out, "f^d = " + fd.get_str());
  out.check.add("eta K -> K -> eta K is f^d", out_in, "f^d = " + fd.get_str());
  return out;
}

std::variant<Factorization, NoFactorization> factor_through_leta(const IntMap& alpha, const Integer& f) {
  const IntComplex& k = alpha.source;
  const IntComplex& m = alpha.target;
  if (!k.empty() && k.hi() > 1) throw std::invalid_argument("factor_through_leta: source must sit in degrees <= 1");
  if (!m.empty() && m.lo() < 0) throw std::invalid_argument("factor_through_leta: target must sit in degrees >= 0");
  if (!is_chain_map(alpha)) throw std::invalid_argument("factor_through_leta: alpha is not a chain map");
  const IntMatrix a1 = alpha.at(1);
  const IntMatrix d0 = m.differential(0);
  const IntMatrix system = hconcat(d0, int_identity(m.rank(1), f));
  IntMatrix h = int_matrix(m.rank(0), k.rank(1));
  for (std::size_t c = 0; c < a1.cols(); ++c) {
    std::vector<Integer> y(a1.rows());
    for (std::size_t i = 0; i < a1.rows(); ++i) y[i] = -a1.at(i, c);
    auto x = solve_any(system, y);
    if (!x) return NoFactorization{"H^1(alpha) is not contained in f H^1(M)"};
    for (std::size_t i = 0; i < m.rank(0); ++i) h.at(i, c) = (*x)[i];
  }
  Factorization out;
  out.homotopy = h;
  out.adjusted = IntMap{k, m, {}};
  out.adjusted.components[0] = add(Z, alpha.at(0), mul(h, k.differential(0)));
  out.adjusted.components[1] = add(Z, a1, mul(d0, h));
  const EtaData e = eta_data(m, f);
  out.factor = IntMap{k, e.complex, {}};
  out.factor.components[0] = solve_or_throw(lattice_at(e, 0), out.adjusted.at(0), "factor_through_leta");
  out.factor.components[1] =
      solve_or_throw(scale(Z, Integer(f), lattice_at(e, 1)), out.adjusted.at(1), "factor_through_leta");
  if (!is_chain_map(out.factor)) throw std::logic_error("factor_through_leta: factor is not a chain map");
  return out;
}

IntComplex truncate_above(const IntComplex& k, int j) {
  if (k.empty() || j >= k.hi()) return k;
  if (j < k.lo()) return IntComplex(k.ring(), k.lo(), {}, {});
  const IntMatrix z = kernel_basis(k.differential(j));
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> diffs;
  for (int i = k.lo(); i < j; ++i) ranks.push_back(k.rank(i));
  ranks.push_back(z.cols());
  for (int i = k.lo(); i + 1 < j; ++i) diffs.push_back(k.differential(i));
  if (j > k.lo()) diffs.push_back(solve_or_throw(z, k.differential(j - 1), "truncate_above"));
  return IntComplex(k.ring(), k.lo(), std::move(ranks), std::move(diffs));
}

IntComplex random_complex(std::mt19937_64& rng, const RandomComplexOptions& options) {
  std::uniform_int_distribution<int> length(1, options.max_length);
  std::uniform_int_distribution<std::size_t> rank(0, options.max_rank);
  std::uniform_int_distribution<long> entry(-options.bound, options.bound), small(-1, 1);
  const int n = length(rng);
  std::vector<std::size_t> ranks;
  for (int i = 0; i < n; ++i) ranks.push_back(rank(rng));
  std::vector<IntMatrix> diffs;
  for (int i = 0; i + 1 < n; ++i) {
    IntMatrix d = int_matrix(ranks[static_cast<std::size_t>(i) + 1], ranks[static_cast<std::size_t>(i)]);
    if (i == 0) {
      for (std::size_t a = 0; a < d.rows(); ++a)
        for (std::size_t b = 0; b < d.cols(); ++b) d.at(a, b) = entry(rng);
    } else {
      // Rows must annihilate the previous differential; combine a basis of its left kernel.
      const IntMatrix left = kernel_basis(transpose(diffs.back()));
      for (int attempt = 0; attempt < 20; ++attempt) {
        IntMatrix c = int_matrix(d.rows(), left.cols());
        for (std::size_t a = 0; a < c.rows(); ++a)
          for (std::size_t b = 0; b < c.cols(); ++b) c.at(a, b) = small(rng);
        const IntMatrix candidate = mul(c, transpose(left));
        bool fits = true;
        for (std::size_t a = 0; a < candidate.rows() && fits; ++a)
          for (std::size_t b = 0; b < candidate.cols(); ++b)
            if (abs(candidate.at(a, b)) > options.bound) fits = false;
        if (fits) {
          d = candidate;
          break;
        }
      }
    }
    diffs.push_back(std::move(d));
  }
  return IntComplex(Z, 0, std::move(ranks), std::move(diffs));
}

Report run_leta_suite(int instances, std::uint64_t seed) {
  Report r("s5-leta instances=" + std::to_string(instances) + " seed=" + std::to_string(seed));
  std::mt19937_64 rng(seed);
  const Integer fs[] = {2, 3, 4};
  for (int n = 0; n < instances; ++n) {
    const IntComplex k = random_complex(rng);
    const Integer& f = fs[n % 3];
    const std::string prefix = "instance " + std::to_string(n) + " f=" + f.get_str() + ": ";
    r.merge(check_homology_formula(k, f), prefix);
    r.merge(check_leta_mod_f_is_bockstein(k, f), prefix);
    r.merge(check_composition(k, 2, 2), prefix);
    r.merge(check_composition(k, 2, 3), prefix);
  }
  return r;
}

}  // namespace aomega
