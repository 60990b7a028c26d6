#include <random>

#include "aomega/decalage.hpp"
#include "aomega/model.hpp"
#include "doctest.h"

using namespace aomega;

namespace {

const IntegerRing Z{};

IntComplex two_term(long a) { return IntComplex(Z, 0, {1, 1}, {int_matrix({{a}})}); }

HomologyGroup<Integer> group(std::size_t free, std::vector<long> torsion) {
  HomologyGroup<Integer> g;
  g.free_rank = free;
  for (long t : torsion) g.torsion.push_back(t);
  return g;
}

std::string failure(const Report& r) {
  const auto* f = r.first_failure();
  return f ? f->name + ": " + f->detail : "";
}

}  // namespace

TEST_CASE("eta_subcomplex examples") {
  for (long p : {2, 3, 5}) {
    CHECK(homology_snf(eta_subcomplex(two_term(p), p)).is_zero());
    const auto h = homology_snf(eta_subcomplex(two_term(p * p), p));
    CHECK(h.at(0).is_zero());
    CHECK(h.at(1) == group(0, {p}));
  }
  const IntComplex zero(Z, 0, {1, 1}, {int_matrix(1, 1)});
  const auto e = eta_data(zero, 2);
  CHECK(e.lattice.at(0) == int_matrix({{1}}));
  CHECK(e.lattice.at(1) == int_matrix({{1}}));
  const auto h = homology_snf(e.complex);
  CHECK(h.at(0) == group(1, {}));
  CHECK(h.at(1) == group(1, {}));
  CHECK_THROWS_AS(eta_subcomplex(zero, 0), std::invalid_argument);
}

TEST_CASE("eta_subcomplex against the definition by enumeration") {
  // For a one-term differential [Z^a -> Z^b] the degree-0 lattice is
  // {x : d x = 0 mod f}; count residues mod f and compare indices.
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix d = int_matrix(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) d.at(i, j) = entry(rng);
    const long f = 2 + trial % 3;
    const auto e = eta_data(IntComplex(Z, 0, {2, 2}, {d}), f);
    long count = 0;
    for (long x = 0; x < f; ++x)
      for (long y = 0; y < f; ++y) {
        bool ok = true;
        for (std::size_t i = 0; i < 2; ++i) ok = ok && (d.at(i, 0) * x + d.at(i, 1) * y) % f == 0;
        count += ok;
      }
    // [Z^2 : P_0] = f^2 / #{residues in P_0}
    const auto divs = elementary_divisors(e.lattice.at(0));
    Integer index = 1;
    for (const auto& v : divs) index *= v;
    CHECK(index * count == f * f);
  }
}

TEST_CASE("leta_koszul") {
  const AinfModel model(3, 1);
  const LaurentRing a{3, 1};
  std::vector<Laurent> g;
  std::vector<RationalExponent> grading;
  for (long e : {1, 2, -1}) {
    g.push_back(model.q_power(RationalExponent(3, e)) - model.one());
    grading.push_back(RationalExponent(3, e));
  }
  auto r = leta_koszul(koszul_summand(a, g, grading), model.mu());
  REQUIRE(std::holds_alternative<KoszulSummand<LaurentRing>>(r));
  const auto& s = std::get<KoszulSummand<LaurentRing>>(r);
  CHECK(s.elements[0] == q_analog(1, model));
  CHECK(s.elements[1] == q_analog(2, model));
  CHECK(s.elements[2] == q_analog(-1, model));
  CHECK(s.twist == 1);

  const auto pm = model.phi_inverse_mu();
  // f = q^{1/3}-1 does not divide q^{1/9}-1, and the first element divides f.
  const AinfModel deep(3, 2);
  const LaurentRing a2{3, 2};
  auto z = leta_koszul(koszul_summand(a2, {deep.phi_inverse_mu(), deep.q_power(RationalExponent(3, 1, 2)) - deep.one()},
                                      {RationalExponent(3, 1, 1), RationalExponent(3, 1, 2)}),
                       deep.phi_inverse_mu());
  CHECK(std::holds_alternative<LetaZero>(z));
  auto z2 = leta_koszul(koszul_summand(a, {pm, model.q_power(RationalExponent(3, 2, 1)) - model.one()},
                                       {RationalExponent(3, 1, 1), RationalExponent(3, 2, 1)}),
                        model.mu());
  CHECK(std::holds_alternative<LetaZero>(z2));

  auto zz = leta_koszul(koszul_summand(Z, {Integer(4), Integer(6)}, {RationalExponent(2, 0), RationalExponent(2, 0)}),
                        Integer(2));
  REQUIRE(std::holds_alternative<KoszulSummand<IntegerRing>>(zz));
  CHECK(std::get<KoszulSummand<IntegerRing>>(zz).elements == std::vector<Integer>{2, 3});
  auto ns = leta_koszul(koszul_summand(Z, {Integer(4), Integer(3)}, {RationalExponent(2, 0), RationalExponent(2, 0)}),
                        Integer(2));
  CHECK(std::holds_alternative<NotStructured>(ns));
}

TEST_CASE("leta_koszul agrees with eta_subcomplex in the divisibility cases") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> val(-6, 6);
  std::uniform_int_distribution<int> len(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const long f = 2 + trial % 3;
    const int d = len(rng);
    std::vector<Integer> g;
    const bool divide_case = trial % 2 == 0;
    for (int i = 0; i < d; ++i) g.push_back(divide_case ? Integer(f * val(rng)) : Integer(val(rng)));
    if (!divide_case) g[0] = 1;  // a unit divides f
    std::vector<RationalExponent> grading(static_cast<std::size_t>(d), RationalExponent(2, 0));
    const auto k = koszul(Z, g);
    const auto lattice = canonical(homology_snf(eta_subcomplex(k, f)));
    auto sym = leta_koszul(koszul_summand(Z, g, grading), Integer(f));
    if (divide_case) {
      REQUIRE(std::holds_alternative<KoszulSummand<IntegerRing>>(sym));
      CHECK(canonical(homology_snf(std::get<KoszulSummand<IntegerRing>>(sym).complex())) == lattice);
    } else {
      REQUIRE(std::holds_alternative<LetaZero>(sym));
      CHECK(lattice.is_zero());
    }
  }
}

TEST_CASE("bockstein examples") {
  for (long p : {2, 3, 5}) {
    const auto b2 = bockstein(two_term(p * p), p);
    CHECK(b2.groups.at(0) == group(0, {p}));
    CHECK(b2.groups.at(1) == group(0, {p}));
    CHECK(b2.beta_is_zero(0));
    const auto b1 = bockstein(two_term(p), p);
    CHECK_FALSE(b1.beta_is_zero(0));
    CHECK(b1.beta.at(0) == int_matrix({{1}}));
    CHECK(b1.homology().is_zero());
  }
  const auto bz = bockstein(IntComplex(Z, 0, {2, 1}, {int_matrix(1, 2)}), 3);
  CHECK(bz.beta_is_zero(0));
  CHECK_THROWS_AS(bockstein(two_term(2), 6), std::invalid_argument);
}

TEST_CASE("triangle and exactness examples") {
  for (long p : {2, 3}) {
    const auto r = check_leta_mod_f_is_bockstein(two_term(p * p), p);
    CHECK_MESSAGE(r.passed(), failure(r));
  }
  const auto k24 = koszul(Z, {Integer(2), Integer(4)});
  CHECK(check_leta_mod_f_is_bockstein(k24, 2).passed());
  const IntComplex three(Z, 0, {1, 2, 1}, {int_matrix({{3}, {6}}), int_matrix({{2, -1}})});
  CHECK(check_leta_mod_f_is_bockstein(three, 3).passed());

  CHECK(check_homology_formula(two_term(9), 3).passed());
  CHECK(check_homology_formula(two_term(3), 3).passed());
  CHECK(check_homology_formula(IntComplex(Z, 0, {1, 2}, {int_matrix({{5}, {0}})}), 2).passed());

  const auto c8 = check_composition(two_term(8), 2, 2);
  CHECK(c8.passed());
  CHECK(homology_snf(eta_subcomplex(eta_subcomplex(two_term(8), 2), 2)).at(1) == group(0, {2}));
  CHECK(check_composition(two_term(12), 1, 3).passed());
}

TEST_CASE("random complexes: homology formula, bockstein, composition") {
  const auto r = run_leta_suite(60, 23);
  CHECK_MESSAGE(r.passed(), failure(r));
}

TEST_CASE("exactness criterion") {
  // Multiplication by 3 on Z, f = 2: no boundary mod 2.
  const IntComplex z(Z, 0, {1}, {});
  const auto t1 = cone_triangle(multiplication_map(z, Integer(3)));
  CHECK(homotopy_is_valid(t1));
  const auto o1 = check_exactness_criterion(t1, 2);
  CHECK(o1.applicable);
  CHECK_MESSAGE(o1.report.passed(), failure(o1.report));

  // Split: K -> K + M.
  const auto k = two_term(4);
  const auto m = two_term(6);
  IntComplex l(Z, 0, {2, 2}, {int_matrix({{4, 0}, {0, 6}})});
  IntMap inc{k, l, {{0, int_matrix({{1}, {0}})}, {1, int_matrix({{1}, {0}})}}};
  const auto o2 = check_exactness_criterion(cone_triangle(inc), 2);
  CHECK(o2.applicable);
  CHECK_MESSAGE(o2.report.passed(), failure(o2.report));

  // Z --p--> Z with f = p: the boundary is nonzero.
  const auto o3 = check_exactness_criterion(cone_triangle(multiplication_map(z, Integer(3))), 3);
  CHECK_FALSE(o3.applicable);
  CHECK(o3.report.passed());
}

TEST_CASE("mod g commutation") {
  CHECK(check_mod_g_commutation(koszul(Z, {Integer(6)}), 2, 3).passed());
  CHECK(check_mod_g_commutation(two_term(6), 3, 2).passed());
  CHECK(check_mod_g_commutation(two_term(0), 2, 3).passed());
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = check_mod_g_commutation(random_complex(rng), trial % 2 ? 4 : 3, trial % 2 ? 3 : 2);
    CHECK_MESSAGE(r.passed(), failure(r));
  }
}

TEST_CASE("leta inverse maps") {
  for (long p : {2, 3}) {
    const auto m = leta_inverse_maps(two_term(p * p), p, 1);
    CHECK_MESSAGE(m.check.passed(), failure(m.check));
    CHECK(m.map_in.at(1) == int_matrix({{p}}));
  }
  const auto id = leta_inverse_maps(IntComplex(Z, 0, {1}, {}), 5, 0);
  CHECK(id.check.passed());
  CHECK(id.map_in.at(0) == int_matrix({{1}}));
  CHECK(id.map_out.at(0) == int_matrix({{1}}));
  const auto k26 = leta_inverse_maps(koszul(Z, {Integer(2), Integer(6)}), 2, 2);
  CHECK(k26.check.passed());
  CHECK(multiply(Z, k26.map_in.at(1), k26.map_out.at(1)) == int_identity(2, 4));
  CHECK_THROWS_AS(leta_inverse_maps(two_term(4), 2, 0), std::invalid_argument);
}

TEST_CASE("factor through leta") {
  const auto m = two_term(3);                          // Z/3 model
  const IntComplex k(Z, 1, {1}, {});                   // Z[-1]
  IntMap unit{k, m, {{1, int_matrix({{1}})}}};
  CHECK(std::holds_alternative<NoFactorization>(factor_through_leta(unit, 3)));
  IntMap triple{k, m, {{1, int_matrix({{3}})}}};
  auto f3 = factor_through_leta(triple, 3);
  REQUIRE(std::holds_alternative<Factorization>(f3));
  IntMap zero{k, m, {}};
  auto f0 = factor_through_leta(zero, 3);
  REQUIRE(std::holds_alternative<Factorization>(f0));
  CHECK(is_zero_matrix(Z, std::get<Factorization>(f0).factor.at(1)));

  // A free target: alpha = 2 * (anything) factors through eta_2.
  const auto mf = two_term(4);
  const IntComplex k2(Z, 0, {1, 1}, {int_matrix({{4}})});
  IntMap twice{k2, mf, {{0, int_matrix({{2}})}, {1, int_matrix({{2}})}}};
  auto f2 = factor_through_leta(twice, 2);
  REQUIRE(std::holds_alternative<Factorization>(f2));
  const auto& fac = std::get<Factorization>(f2);
  const auto e = eta_data(mf, 2);
  CHECK(multiply(Z, e.lattice.at(0), fac.factor.at(0)) == fac.adjusted.at(0));
  CHECK(multiply(Z, scale(Z, Integer(2), e.lattice.at(1)), fac.factor.at(1)) == fac.adjusted.at(1));
  const IntComplex long_source(Z, 0, {1, 1, 1}, {int_matrix(1, 1), int_matrix(1, 1)});
  CHECK_THROWS_AS(factor_through_leta(IntMap{long_source, m, {}}, 3), std::invalid_argument);
}

TEST_CASE("truncation and restriction of scalars") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const auto k = random_complex(rng);
    const long f = 2 + trial % 3;
    const auto full = canonical(homology_snf(eta_subcomplex(k, f)));
    for (int j = k.lo(); j <= k.hi(); ++j) {
      const auto t = canonical(homology_snf(eta_subcomplex(truncate_above(k, j), f)));
      for (int i = k.lo(); i <= j; ++i) CHECK(t.at(i) == full.at(i));
    }
    IntegerRing relabeled{"Z (restricted)"};
    const IntComplex r(relabeled, k.lo(), k.ranks(), k.diffs());
    const auto er = eta_subcomplex(r, f), ek = eta_subcomplex(k, f);
    CHECK(er.ring().tag() == "Z (restricted)");
    CHECK(er.ranks() == ek.ranks());
    CHECK(er.diffs() == ek.diffs());
  }
}
