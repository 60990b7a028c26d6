// One PASS/FAIL line per acceptance criterion, with wall-clock times.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <tuple>

#include "aomega/ainf.hpp"
#include "aomega/decalage.hpp"
#include "aomega/lattice.hpp"
#include "aomega/qderham.hpp"
#include "aomega/suites.hpp"
#include "aomega/torus.hpp"
#include "aomega/witt.hpp"

using namespace aomega;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note = what;
    pass = pass && ok;
  }
  void require(const Report& r) {
    const auto* f = r.first_failure();
    require(f == nullptr, f ? r.name() + ": " + f->name + " " + f->detail : "");
  }
};

struct Box {
  std::int64_t p;
  int n, d, bound;
};

std::vector<Box> criterion_boxes() {
  std::vector<Box> out;
  for (std::int64_t p : {2, 3, 5})
    for (int n = 1; n <= 2; ++n)
      for (int d = 0; d <= 3; ++d)
        for (int bound = 0; bound <= 4; ++bound) out.push_back({p, n, d, bound});
  return out;
}

std::string box_tag(const Box& b) {
  return "p=" + std::to_string(b.p) + " n=" + std::to_string(b.n) + " d=" + std::to_string(b.d) +
         " B=" + std::to_string(b.bound);
}

std::size_t binom(int d, int i) {
  std::size_t r = 1;
  for (int k = 0; k < i; ++k) r = r * static_cast<std::size_t>(d - k) / static_cast<std::size_t>(k + 1);
  return r;
}

int sort_sign(const std::vector<int>& word) {
  int inversions = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = i + 1; j < word.size(); ++j) inversions += word[i] > word[j];
  return inversions % 2 ? -1 : 1;
}

// d(t^a dt_S / t_S) in the dt basis, written back in dlog coordinates.
IntMatrix de_rham_oracle(const std::vector<std::int64_t>& a, int degree) {
  const int d = static_cast<int>(a.size());
  const auto src = koszul_subsets(d, degree), dst = koszul_subsets(d, degree + 1);
  IntMatrix m = int_matrix(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c)
    for (int j = 0; j < d; ++j) {
      if (std::count(src[c].begin(), src[c].end(), j)) continue;
      std::vector<int> word{j};
      word.insert(word.end(), src[c].begin(), src[c].end());
      std::vector<int> sorted = word;
      std::sort(sorted.begin(), sorted.end());
      const auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), sorted) - dst.begin());
      m.at(row, c) += sort_sign(word) * a[static_cast<std::size_t>(j)];
    }
  return m;
}

// Phi_{p^n}(u) = sum_{i<p} u^{i p^{n-1}}.
Laurent cyclotomic_oracle(std::int64_t p, int n) {
  std::int64_t step = 1;
  for (int i = 1; i < n; ++i) step *= p;
  Laurent x(p, n);
  for (std::int64_t i = 0; i < p; ++i) x += Laurent::monomial(p, n, i * step);
  return x;
}

std::int64_t teichmuller_oracle(std::int64_t a, std::int64_t p, int m) {
  std::int64_t pm = 1;
  for (int i = 0; i < m; ++i) pm *= p;
  for (std::int64_t t = 0; t < pm; ++t) {
    if (t % p != a % p) continue;
    std::int64_t tp = 1;
    for (int i = 0; i < p; ++i) tp = tp * t % pm;
    if (tp == t) return t;
  }
  return -1;
}

Outcome warning_pair() {
  Outcome o;
  for (std::int64_t p : {2, 3, 5, 7}) o.require(check_warning_pair(p));
  // Independently: eta_p of Z --p^2--> Z is Z --p--> Z.
  const IntegerRing z;
  const auto eta = eta_subcomplex(IntComplex(z, 0, {1, 1}, {IntMatrix(1, 1, Integer(4))}), Integer(2));
  o.require(eta.ranks() == std::vector<std::size_t>{1, 1} && abs(eta.differential(0).at(0, 0)) == 2,
            "eta_2 of Z --4--> Z is not Z --2--> Z");
  return o;
}

Outcome leta_properties() {
  Outcome o;
  std::mt19937_64 rng(2024);
  const RandomComplexOptions options{4, 4, 9};
  const long values[] = {2, 3, 4};
  for (int trial = 0; trial < 200; ++trial) {
    const auto k = random_complex(rng, options);
    const Integer f = values[trial % 3], g = values[(trial / 3) % 3];
    o.require(check_homology_formula(k, f));
    o.require(check_leta_mod_f_is_bockstein(k, f));
    o.require(check_composition(k, f, g));
  }
  return o;
}

Outcome notation() {
  Outcome o;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13})
    for (int n = 1; n <= 3; ++n) {
      const AinfModel model(p, n);
      o.require(check_notation_identities(model, {50, 7}));
      o.require(model.xi() == cyclotomic_oracle(p, n), "xi != Phi_{p^n}(u)");
      o.require(reduce_mod_mu(model.xi_tilde()) == model.constant(p), "xi_tilde mod mu != p");
    }
  return o;
}

Outcome tilde_ranks() {
  Outcome o;
  for (const auto& b : criterion_boxes()) {
    const GradingBox box(b.p, b.d, b.n, b.bound);
    const auto tilde = tilde_omega_torus(box);
    o.require(check_tilde_omega_ranks(tilde));
    std::size_t bad = 0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      const auto& h = tilde.cell(i).homology;
      if (!box.is_integral(i)) {
        bad += !h.is_zero();
        continue;
      }
      for (int deg = 0; deg <= b.d; ++deg)
        bad += h.at(deg).free_rank != binom(b.d, deg) || !h.at(deg).torsion.empty();
    }
    o.require(bad == 0, box_tag(b) + ": per-grading ranks");
  }
  return o;
}

Outcome de_rham() {
  Outcome o;
  for (const auto& b : criterion_boxes()) {
    const AinfModel model(b.p, b.n);
    const GradingBox box(b.p, b.d, b.n, b.bound);
    const auto dr = specialize_de_rham(ainf_omega_torus(model, box));
    o.require(dr.report);
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (!box.is_integral(i)) continue;
      std::vector<std::int64_t> a;
      for (auto k : box.numerators(i)) a.push_back(k / box.denominator());
      const auto& piece = dr.pieces.at(dr.result.cell_class[i]);
      for (int deg = 0; deg < b.d; ++deg)
        o.require(piece.differential(deg) == de_rham_oracle(a, deg), box_tag(b) + ": de Rham matrix");
    }
  }
  const AinfModel model(3, 1);
  const auto dr = specialize_de_rham(ainf_omega_torus(model, GradingBox(3, 1, 1, 4)));
  const GradingBox box(3, 1, 1, 4);
  for (std::int64_t a = -4; a <= 4; ++a) {
    const auto i = *box.index_of({RationalExponent(3, a)});
    o.require(dr.pieces.at(dr.result.cell_class[i]).differential(0).at(0, 0) == a, "beta_xi != a");
  }
  return o;
}

Outcome hodge_tate() {
  Outcome o;
  for (const auto& b : criterion_boxes()) {
    const GradingBox box(b.p, b.d, b.n, b.bound);
    const auto ht = specialize_hodge_tate(ainf_omega_torus(AinfModel(b.p, b.n), box));
    o.require(ht.report);
    // theta_tilde([a]_q) vanishes iff p | a: free cells are those with p | a_j for all j.
    std::size_t divisible = 0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (!box.is_integral(i)) continue;
      const auto a = box.numerators(i);
      divisible += std::all_of(a.begin(), a.end(), [&](std::int64_t k) { return (k / box.denominator()) % b.p == 0; });
    }
    const auto table = ht.result.free_rank_table();
    for (int deg = 0; deg <= b.d; ++deg) {
      const auto it = table.find(deg);
      o.require((it == table.end() ? 0 : it->second) == divisible * binom(b.d, deg), box_tag(b) + ": HT ranks");
    }
  }
  return o;
}

Outcome q_de_rham() {
  Outcome o;
  for (std::int64_t p : {2, 3})
    for (int n = 1; n <= 2; ++n)
      for (int d = 0; d <= 2; ++d)
        for (int bound = 0; bound <= 3; ++bound) {
          const AinfModel model(p, n);
          o.require(compare_with_torus_pipeline(model, d, bound));
          o.require(check_q_to_one(model, d, bound));
        }
  for (std::int64_t p : {2, 3}) {
    o.require(check_q_leibniz(AinfModel(p, 1), 2, 100, 5));
    o.require(check_nabla_commute(AinfModel(p, 1), 3, 30, 6));
  }
  return o;
}

Outcome semicontinuity() {
  Outcome o;
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t p = trial % 2 ? 2 : 3;
    const auto rc = random_fp_complex(rng, p);
    const auto s = semicontinuity_demo(rc.complex);
    o.require(s.holds(), "generic > special on a random complex");
    std::map<int, std::size_t> generic, special;
    for (const auto& x : rc.diagonal.summands) {
      if (x.kind == DiagonalSummand<FpPolyRing>::Kind::Rank1Free) {
        ++generic[x.shift];
        ++special[x.shift];
      } else if (x.g.coeff(0) == 0) {
        ++special[x.shift];
        ++special[x.shift + 1];
      }
    }
    for (const auto& [deg, n] : s.generic) o.require(n == generic[deg], "generic rank against the diagonal form");
    for (const auto& [deg, n] : s.special) o.require(n == special[deg], "special rank against the diagonal form");
  }
  for (std::int64_t p : {3, 5})
    for (int d = 0; d <= 3; ++d) {
      const auto t = semicontinuity_torus(AinfModel(p, 1), GradingBox(p, d, 1, 1));
      o.require(t.all_equal(), "torus fibres differ");
      for (int deg = 0; deg <= d; ++deg) o.require(t.generic.at(deg) == binom(d, deg), "torus rank pattern");
    }
  const FpPolyRing r{2};
  const auto jump =
      semicontinuity_demo(ChainComplex<FpPolyRing>(r, 0, {1, 1}, {RingMatrix<FpPolyRing>(1, 1, FpPoly::monomial(2, 1))}));
  o.require(jump.verdict.at(0) == FibreVerdict::Strict && jump.verdict.at(1) == FibreVerdict::Strict,
            "torsion model is not strict");
  return o;
}

Outcome witt() {
  Outcome o;
  for (std::int64_t p : {2, 3}) {
    o.require(run_witt_suite(p, 4, {100, 13}));
    for (int m = 1; m <= 4; ++m)
      for (std::int64_t a = 0; a < p; ++a)
        o.require(teichmuller_lift(PerfectionElement::constant(p, a), m) ==
                      TruncatedWittElement::constant(p, m, teichmuller_oracle(a, p, m)),
                  "Teichmuller lift of a constant");
  }
  o.require(run_fixed_point_suite(20, 17));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget;  // seconds; 0 when none is stated
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"1 L eta_p on Z/p and Z/p^2", 1, warning_pair},
      {"2 decalage property suite, 200 random complexes", 30, leta_properties},
      {"3 A_inf notation identities, p <= 13, n <= 3", 10, notation},
      {"4 tilde Omega ranks, p in {2,3,5}, n <= 2, d <= 3, B <= 4", 20, tilde_ranks},
      {"5 de Rham specialization against classical de Rham", 0, de_rham},
      {"6 Hodge-Tate specialization against twisted tilde Omega", 0, hodge_tate},
      {"7 q-de Rham against the torus pipeline, q -> 1, q-Leibniz", 0, q_de_rham},
      {"8 semicontinuity of fibre ranks", 0, semicontinuity},
      {"9 Witt layer and Frobenius fixed points", 10, witt},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.budget > 0 && took > c.budget) {
      o.pass = false;
      o.note = "over the " + std::to_string(static_cast<int>(c.budget)) + " s budget";
    }
    failures += !o.pass;
    std::printf("%s  %-62s %8.3f s%s%s\n", o.pass ? "PASS" : "FAIL", c.name, took, o.note.empty() ? "" : "  ",
                o.note.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
