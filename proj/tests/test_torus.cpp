#include <algorithm>
#include <random>

#include "aomega/ainf.hpp"
#include "aomega/lattice.hpp"
#include "aomega/torus.hpp"
#include "doctest.h"

using namespace aomega;

namespace {

std::string failure(const Report& r) {
  const auto* f = r.first_failure();
  return f ? f->name + ": " + f->detail : "";
}

RationalExponent ex(std::int64_t p, std::int64_t k, int den) { return RationalExponent(p, k, den); }

// Restriction of scalars Z[zeta] -> Z: each entry becomes its multiplication
// matrix on the basis 1, zeta, ..., zeta^{phi-1}.
ChainComplex<IntegerRing> restrict_to_z(const ChainComplex<CyclotomicRing>& k) {
  const auto& r = k.ring();
  const auto n = static_cast<std::size_t>(cyclotomic_degree(r.p, r.level));
  std::vector<std::size_t> ranks;
  for (auto x : k.ranks()) ranks.push_back(x * n);
  std::vector<IntMatrix> diffs;
  for (const auto& m : k.diffs()) {
    IntMatrix out = int_matrix(m.rows() * n, m.cols() * n);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t b = 0; b < n; ++b) {
          const auto col = m.at(i, j) * Cyclotomic::zeta_power(r.p, r.level, static_cast<std::int64_t>(b));
          for (std::size_t a = 0; a < n; ++a) out.at(i * n + a, j * n + b) = col.coeffs()[a];
        }
    diffs.push_back(out);
  }
  return ChainComplex<IntegerRing>(IntegerRing{}, k.lo(), ranks, diffs);
}

// Sign of the permutation sorting `word`, by counting inversions.
int sort_sign(const std::vector<int>& word) {
  int inversions = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = i + 1; j < word.size(); ++j) inversions += word[i] > word[j];
  return inversions % 2 ? -1 : 1;
}

// de Rham of t^a computed in the dt basis: t^a dlog t_S = t^{a - e_S} dt_S,
// differentiated with the partial derivatives of t^{a - e_S}.
IntMatrix de_rham_oracle(const std::vector<std::int64_t>& a, int degree) {
  const int d = static_cast<int>(a.size());
  const auto src = koszul_subsets(d, degree), dst = koszul_subsets(d, degree + 1);
  IntMatrix m = int_matrix(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    std::vector<std::int64_t> exponent = a;
    for (int s : src[c]) exponent[static_cast<std::size_t>(s)] -= 1;
    for (int j = 0; j < d; ++j) {
      if (std::count(src[c].begin(), src[c].end(), j)) continue;
      // d/dt_j (t^e) dt_j ^ dt_S = e_j t^{e - e_j} dt_j ^ dt_S, and
      // t^{e - e_j} dt_{S + j} = t^a dlog t_{S + j}.
      std::vector<int> word{j};
      word.insert(word.end(), src[c].begin(), src[c].end());
      std::vector<int> sorted = word;
      std::sort(sorted.begin(), sorted.end());
      const auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), sorted) - dst.begin());
      m.at(row, c) += sort_sign(word) * exponent[static_cast<std::size_t>(j)];
    }
  }
  return m;
}

std::map<int, std::size_t> diagonal_generic(const DiagonalComplex<FpPolyRing>& d) {
  std::map<int, std::size_t> out;
  for (const auto& s : d.summands)
    if (s.kind == DiagonalSummand<FpPolyRing>::Kind::Rank1Free) ++out[s.shift];
  return out;
}

std::map<int, std::size_t> diagonal_special(const DiagonalComplex<FpPolyRing>& d) {
  std::map<int, std::size_t> out;
  for (const auto& s : d.summands) {
    if (s.kind == DiagonalSummand<FpPolyRing>::Kind::Rank1Free) {
      ++out[s.shift];
    } else if (s.g.coeff(0) == 0) {
      ++out[s.shift];
      ++out[s.shift + 1];
    }
  }
  return out;
}

std::map<int, std::size_t> nonzero(std::map<int, std::size_t> m) {
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  return m;
}

}  // namespace

TEST_CASE("grading box enumeration") {
  const GradingBox box(3, 1, 1, 1);
  REQUIRE(box.size() == 7);
  std::vector<RationalExponent> seen;
  for (std::size_t i = 0; i < box.size(); ++i) seen.push_back(box.grading(i)[0]);
  const std::vector<RationalExponent> expected{ex(3, -3, 1), ex(3, -2, 1), ex(3, -1, 1), ex(3, 0, 0),
                                               ex(3, 1, 1),  ex(3, 2, 1),  ex(3, 3, 1)};
  CHECK(seen == expected);
  CHECK(box.grading(box.zero_index())[0].is_zero());

  const GradingBox point(2, 0, 1, 3);
  CHECK(point.size() == 1);
  CHECK(point.grading(0).empty());

  const GradingBox two(2, 2, 2, 1);
  for (std::size_t i = 0; i < two.size(); ++i) CHECK(two.index_of(two.grading(i)) == i);
  CHECK_FALSE(two.index_of({ex(2, 1, 3), ex(2, 0, 0)}).has_value());
  CHECK_FALSE(two.index_of({ex(2, 2, 0), ex(2, 0, 0)}).has_value());
  CHECK_THROWS_AS(GradingBox(4, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(GradingBox(2, 1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(GradingBox(13, 4, 3, 8), std::invalid_argument);
}

TEST_CASE("build_torus_cohomology examples") {
  const AinfModel model(3, 1);
  const GradingBox box(3, 1, 1, 1);
  const auto sum = build_torus_cohomology(model, box);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto k = sum.summand(i);
    REQUIRE(k.elements.size() == 1);
    CHECK(k.elements[0] == model.eps_power_minus_one(box.grading(i)[0]));
    CHECK(k.grading == box.grading(i));
  }
  const auto empty = build_torus_cohomology(model, GradingBox(3, 0, 1, 1)).summand(0);
  CHECK(empty.elements.empty());
  CHECK(empty.complex().ranks() == std::vector<std::size_t>{1});

  const AinfModel m2(2, 1);
  const GradingBox b2(2, 2, 1, 1);
  const auto k = build_torus_cohomology(m2, b2).summand(*b2.index_of({ex(2, 0, 0), ex(2, 1, 1)}));
  CHECK(k.elements[0].is_zero());
  CHECK(k.elements[1] == m2.phi_inverse_mu());

  // The O_C model is theta of the A model.
  const auto oc = build_torus_cohomology_oc(box);
  for (std::size_t v = 0; v < box.side(); ++v) CHECK(oc.weights[v] == theta(sum.weights[v]));
  const auto twisted = build_torus_cohomology_oc(box, 1);
  for (std::size_t v = 0; v < box.side(); ++v) CHECK(twisted.weights[v] == theta_tilde(sum.weights[v]));
}

TEST_CASE("tilde_omega_torus examples") {
  for (int d : {0, 1, 3}) {
    const GradingBox box(2, d, 1, 1);
    const auto t = tilde_omega_torus(box);
    const auto& zero = t.cell(box.zero_index()).homology;
    for (int i = 0; i <= d; ++i) CHECK(zero.at(i).free_rank == binomial(d, i));
    CHECK(check_tilde_omega_ranks(t).passed());
  }
  const GradingBox box(3, 1, 1, 1);
  const auto t = tilde_omega_torus(box);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& h = t.cell(i).homology;
    if (box.is_integral(i)) {
      CHECK(h.at(0).free_rank == 1);
      CHECK(h.at(1).free_rank == 1);
    } else {
      CHECK(h.is_zero());
    }
  }
  CHECK(t.free_rank_table() == std::map<int, std::size_t>{{0, 3}, {1, 3}});
  CHECK(t.nonzero_cells() == 3);
}

TEST_CASE("tilde_omega_torus against leta_koszul and Z-homology of every summand") {
  struct Config {
    std::int64_t p;
    int d, n, bound;
  };
  for (const auto& c : {Config{2, 1, 2, 1}, Config{3, 2, 1, 1}, Config{2, 2, 2, 1}, Config{5, 1, 1, 1}}) {
    const GradingBox box(c.p, c.d, c.n, c.bound);
    const auto sum = build_torus_cohomology_oc(box);
    const auto t = tilde_omega_torus(box);
    const auto& r = sum.ring;
    const Cyclotomic f = Cyclotomic::zeta_power(c.p, c.n, ipow(c.p, static_cast<unsigned>(c.n - 1))) - r.one();
    const auto phi = static_cast<std::size_t>(cyclotomic_degree(c.p, c.n));
    for (std::size_t i = 0; i < box.size(); ++i) {
      const auto direct = leta_koszul(sum.summand(i), f);
      REQUIRE_FALSE(std::holds_alternative<NotStructured>(direct));
      HomologyPresentation<Integer> over_z;
      if (const auto* k = std::get_if<KoszulSummand<CyclotomicRing>>(&direct)) over_z = homology_snf(restrict_to_z(k->complex()));
      const auto& cell = t.cell(i).homology;
      for (int deg = 0; deg <= c.d; ++deg) {
        CHECK(over_z.at(deg).torsion.empty());
        CHECK(over_z.at(deg).free_rank == cell.at(deg).free_rank * phi);
        CHECK(cell.at(deg).free_rank == (box.is_integral(i) ? binomial(c.d, deg) : 0));
      }
    }
  }
}

TEST_CASE("tilde_omega_torus rank criterion on the full parameter range") {
  for (std::int64_t p : {2, 3, 5})
    for (int n = 1; n <= 2; ++n)
      for (int d = 0; d <= 3; ++d) {
        const GradingBox box(p, d, n, 2);
        const auto report = check_tilde_omega_ranks(tilde_omega_torus(box));
        CHECK_MESSAGE(report.passed(), failure(report));
      }
}

TEST_CASE("ainf_omega_torus examples") {
  const AinfModel model(3, 1);
  const GradingBox box(3, 1, 1, 3);
  const auto a = ainf_omega_torus(model, box);
  for (std::int64_t x = -3; x <= 3; ++x) {
    const auto index = *box.index_of({ex(3, x, 0)});
    const auto& cell = a.result.cell(index);
    REQUIRE(cell.present);
    CHECK(cell.leta == 2);
    const auto& s = a.survivors.at(a.result.cell_class[index]).summand;
    CHECK(s.elements[0] == q_analog(x, model));
    if (x == 0) {
      CHECK(cell.homology.at(0).free_rank == 1);
      CHECK(cell.homology.at(1).free_rank == 1);
    } else if (x % 3 == 0) {
      // A/[3]_q = A/xi_tilde.
      CHECK(cell.homology.at(0).is_zero());
      REQUIRE(cell.homology.at(1).torsion.size() == 1);
      CHECK(cell.homology.at(1).torsion[0] == model.xi_tilde().to_string());
    } else {
      // [a]_q is a unit of A_inf for p not dividing a.
      CHECK(cell.homology.is_zero());
    }
  }
  const auto third = *box.index_of({ex(3, 1, 1)});
  CHECK_FALSE(a.result.cell(third).present);

  const AinfModel m2(2, 1);
  const GradingBox b2(2, 2, 1, 1);
  const auto a2 = ainf_omega_torus(m2, b2);
  const auto& origin = a2.result.cell(b2.zero_index()).homology;
  CHECK(origin.at(0).free_rank == 1);
  CHECK(origin.at(1).free_rank == 2);
  CHECK(origin.at(2).free_rank == 1);
}

TEST_CASE("ainf_omega_torus against leta_koszul applied summand by summand") {
  for (auto [p, n, d, bound] : {std::tuple{2, 2, 1, 2}, std::tuple{3, 1, 2, 1}, std::tuple{2, 1, 2, 2}}) {
    const AinfModel model(p, n);
    const GradingBox box(p, d, n, bound);
    const auto sum = build_torus_cohomology(model, box);
    const auto a = ainf_omega_torus(model, box);
    for (std::size_t i = 0; i < box.size(); ++i) {
      const auto first = leta_koszul(sum.summand(i), model.phi_inverse_mu());
      REQUIRE_FALSE(std::holds_alternative<NotStructured>(first));
      std::optional<KoszulSummand<LaurentRing>> last;
      if (const auto* k = std::get_if<KoszulSummand<LaurentRing>>(&first)) {
        const auto second = leta_koszul(*k, model.xi());
        REQUIRE_FALSE(std::holds_alternative<NotStructured>(second));
        if (const auto* k2 = std::get_if<KoszulSummand<LaurentRing>>(&second)) last = *k2;
      }
      const auto& cell = a.result.cell(i);
      REQUIRE(cell.present == last.has_value());
      CHECK(cell.present == box.is_integral(i));
      if (last) {
        const auto& s = a.survivors.at(a.result.cell_class[i]);
        CHECK(s.summand.elements == last->elements);
        CHECK(s.summand.twist == 2);
      }
    }
    CHECK(check_leta_mu_composite(a, ainf_omega_torus_mu(model, box)).passed());
  }
}

TEST_CASE("Hodge-Tate specialization") {
  const AinfModel m1(2, 1);
  const auto d1 = specialize_hodge_tate(ainf_omega_torus(m1, GradingBox(2, 1, 1, 2)));
  CHECK_MESSAGE(d1.report.passed(), failure(d1.report));
  const GradingBox b1(2, 1, 1, 2);
  const auto& origin = d1.result.cell(b1.zero_index()).homology;
  CHECK(origin.at(0).free_rank == 1);
  CHECK(origin.at(1).free_rank == 1);
  // a = 2 reduces to the integral grading a/p = 1 of tilde omega.
  CHECK(d1.result.cell(*b1.index_of({ex(2, 2, 0)})).homology.at(1).free_rank == 1);
  CHECK(d1.result.cell(*b1.index_of({ex(2, 1, 0)})).homology.is_zero());

  const auto d2 = specialize_hodge_tate(ainf_omega_torus(m1, GradingBox(2, 2, 1, 2)));
  CHECK_MESSAGE(d2.report.passed(), failure(d2.report));
  const auto d3 = specialize_hodge_tate(ainf_omega_torus(AinfModel(3, 2), GradingBox(3, 2, 2, 1)));
  CHECK_MESSAGE(d3.report.passed(), failure(d3.report));
}

TEST_CASE("classical de Rham pieces against the dt-basis oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> entry(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 4;
    std::vector<std::int64_t> a(static_cast<std::size_t>(d));
    for (auto& x : a) x = entry(rng);
    const auto k = classical_de_rham_piece(a);
    for (int i = 0; i < d; ++i) CHECK(k.differential(i) == de_rham_oracle(a, i));
  }
  CHECK(classical_de_rham_piece({1, 1}).differential(0) == int_matrix({{1}, {1}}));
}

TEST_CASE("de Rham specialization") {
  const AinfModel model(3, 1);
  const GradingBox box(3, 1, 1, 4);
  const auto a = ainf_omega_torus(model, box);
  const auto dr = specialize_de_rham(a);
  CHECK_MESSAGE(dr.report.passed(), failure(dr.report));
  for (std::int64_t x = -4; x <= 4; ++x) {
    const auto index = *box.index_of({ex(3, x, 0)});
    const auto& piece = dr.pieces.at(dr.result.cell_class[index]);
    CHECK(piece.differential(0) == int_matrix({{static_cast<long>(x)}}));
  }
  const auto& origin = dr.result.cell(box.zero_index()).homology;
  CHECK(origin.at(0).free_rank == 1);
  CHECK(origin.at(1).free_rank == 1);

  const AinfModel m2(2, 1);
  const GradingBox b2(2, 2, 1, 1);
  const auto dr2 = specialize_de_rham(ainf_omega_torus(m2, b2));
  CHECK_MESSAGE(dr2.report.passed(), failure(dr2.report));
  const auto& piece = dr2.pieces.at(dr2.result.cell_class[*b2.index_of({ex(2, 1, 0), ex(2, 1, 0)})]);
  CHECK(piece.differential(0) == int_matrix({{1}, {1}}));
  for (std::size_t i = 0; i < b2.size(); ++i)
    if (dr2.result.cell(i).present) {
      std::vector<std::int64_t> g;
      for (auto k : b2.numerators(i)) g.push_back(k / b2.denominator());
      const auto& p = dr2.pieces.at(dr2.result.cell_class[i]);
      for (int deg = 0; deg < 2; ++deg) CHECK(p.differential(deg) == de_rham_oracle(g, deg));
    }
}

TEST_CASE("fraction field rank against integer rank") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> entry(-3, 3);
  std::uniform_int_distribution<std::size_t> dim(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m = int_matrix(r, c);
    // Low-rank products show up often enough this way.
    const std::size_t inner = dim(rng);
    IntMatrix a = int_matrix(r, inner), b = int_matrix(inner, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < inner; ++j) a.at(i, j) = entry(rng);
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t j = 0; j < c; ++j) b.at(i, j) = entry(rng);
    m = multiply(IntegerRing{}, a, b);
    CHECK(fraction_field_rank(IntegerRing{}, m) == int_rank(m));
  }
}

TEST_CASE("etale ranks") {
  for (auto [p, n, d, bound] : {std::tuple{2, 1, 2, 1}, std::tuple{3, 1, 1, 2}, std::tuple{2, 1, 0, 1}}) {
    const AinfModel model(p, n);
    const GradingBox box(p, d, n, bound);
    const auto a = ainf_omega_torus(model, box);
    const auto e = etale_rank_torus(a);
    CHECK_MESSAGE(e.report.passed(), failure(e.report));
    std::map<int, std::size_t> expected;
    for (int i = 0; i <= d; ++i) expected[i] = binomial(d, i);
    CHECK(e.ranks == expected);
    // Every summand directly, no grouping.
    const auto sum = build_torus_cohomology(model, box);
    std::map<int, std::size_t> direct;
    for (std::size_t i = 0; i < box.size(); ++i)
      for (const auto& [deg, r] : fraction_field_homology_ranks(sum.summand(i).complex())) direct[deg] += r;
    CHECK(nonzero(direct) == expected);
  }
  const AinfModel model(3, 1);
  const auto k = koszul(LaurentRing{3, 1}, {q_analog(3, model)});
  CHECK(nonzero(fraction_field_homology_ranks(k)).empty());
}

TEST_CASE("semicontinuity examples") {
  const FpPolyRing r{3};
  const ChainComplex<FpPolyRing> jump(r, 0, {1, 1}, {RingMatrix<FpPolyRing>(1, 1, FpPoly::monomial(3, 1))});
  const auto s = semicontinuity_demo(jump);
  CHECK(s.generic == std::map<int, std::size_t>{{0, 0}, {1, 0}});
  CHECK(s.special == std::map<int, std::size_t>{{0, 1}, {1, 1}});
  CHECK(s.verdict.at(0) == FibreVerdict::Strict);
  CHECK(s.holds());
  CHECK(s.some_strict());

  const ChainComplex<FpPolyRing> flat(r, 0, {2, 1}, {zero_matrix(r, 1, 2)});
  const auto f = semicontinuity_demo(flat);
  CHECK(f.all_equal());
  CHECK(f.generic == std::map<int, std::size_t>{{0, 2}, {1, 1}});

  const auto torus = semicontinuity_torus(AinfModel(3, 1), GradingBox(3, 2, 1, 2));
  CHECK(torus.all_equal());
  CHECK(torus.generic == std::map<int, std::size_t>{{0, 1}, {1, 2}, {2, 1}});
  // B >= p: t^{(p, 0)} and friends add classes on the special fibre.
  const auto wide = semicontinuity_torus(AinfModel(2, 1), GradingBox(2, 1, 1, 2));
  CHECK(wide.holds());
  CHECK(wide.some_strict());
  CHECK(wide.special == std::map<int, std::size_t>{{0, 3}, {1, 3}});
}

TEST_CASE("semicontinuity on random perfect complexes against the diagonal oracle") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t p = trial % 2 ? 2 : 3;
    const auto rc = random_fp_complex(rng, p);
    const auto s = semicontinuity_demo(rc.complex);
    CHECK(s.holds());
    CHECK(nonzero(s.generic) == diagonal_generic(rc.diagonal));
    CHECK(nonzero(s.special) == diagonal_special(rc.diagonal));
  }
}

TEST_CASE("torus pipeline cross-checks") {
  for (auto [p, n, d, bound] : {std::tuple{2, 1, 2, 1}, std::tuple{3, 2, 2, 1}, std::tuple{5, 1, 1, 2}}) {
    const auto report = run_torus_pipeline(AinfModel(p, n), GradingBox(p, d, n, bound));
    CHECK_MESSAGE(report.passed(), failure(report));
  }
}
