#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <variant>

#include "aomega/complex.hpp"
#include "aomega/lattice.hpp"
#include "aomega/report.hpp"

namespace aomega {

using IntComplex = ChainComplex<IntegerRing>;
using IntMap = ChainMap<IntegerRing>;

/// eta_f(K) together with the lattices P_i (in K^i coordinates) such that
/// eta_f(K)^i = f^i P_i; the complex uses the columns of f^i P_i as basis.
struct EtaData {
  IntComplex complex;
  Integer f;
  std::map<int, IntMatrix> lattice;
};

EtaData eta_data(const IntComplex& k, const Integer& f);
IntComplex eta_subcomplex(const IntComplex& k, const Integer& f);
/// eta_f applied to a chain map, in the bases of eta_data.
IntMap eta_map(const IntMap& alpha, const EtaData& source, const EtaData& target);

struct LetaZero {};

template <class Ring>
using LetaKoszulResult = std::variant<KoszulSummand<Ring>, LetaZero, NotStructured>;

/// What L eta_f on a Koszul complex needs to know about one element g.
struct LetaElementFacts {
  bool divisible = false;  // f | g with an exact quotient in the ring
  bool divides_f = false;  // g != 0 and g | f
};

template <class Ring>
LetaElementFacts leta_element_facts(const Ring& r, const typename Ring::Element& g, const typename Ring::Element& f) {
  return {r.exact_div(g, f).has_value(), !r.is_zero(g) && r.divides(g, f)};
}

enum class LetaCase { Divide, Zero, NotStructured };

/// Divide when f divides every element, otherwise Zero when some element divides f.
inline LetaCase leta_case(const std::vector<LetaElementFacts>& facts) {
  if (std::all_of(facts.begin(), facts.end(), [](const auto& x) { return x.divisible; })) return LetaCase::Divide;
  if (std::any_of(facts.begin(), facts.end(), [](const auto& x) { return x.divides_f; })) return LetaCase::Zero;
  return LetaCase::NotStructured;
}

/// Symbolic L eta_f on a Koszul complex: divide every g_i by f when possible,
/// Zero when some g_i divides f. The twist tag counts applications.
template <class Ring>
LetaKoszulResult<Ring> leta_koszul(const KoszulSummand<Ring>& k, const typename Ring::Element& f) {
  const Ring& r = k.ring;
  if (r.is_zero(f)) throw std::invalid_argument("leta_koszul: f must be nonzero");
  std::vector<LetaElementFacts> facts;
  for (const auto& g : k.elements) facts.push_back(leta_element_facts(r, g, f));
  switch (leta_case(facts)) {
    case LetaCase::Divide: {
      std::vector<typename Ring::Element> quotients;
      for (const auto& g : k.elements) quotients.push_back(*r.exact_div(g, f));
      return KoszulSummand<Ring>{r, quotients, k.grading, k.twist + 1};
    }
    case LetaCase::Zero:
      return LetaZero{};
    case LetaCase::NotStructured:
      break;
  }
  return NotStructured{"f does not divide every element and no element divides f"};
}

/// (H^*(K/f), beta_f). H^i(K/f) = cycles_i / boundaries_i with cycles_i =
/// {x : d x in f K^{i+1}} and boundaries_i = d K^{i-1} + f K^i; beta sends x
/// to d x / f.
struct BocksteinComplex {
  Integer f;
  int lo = 0, hi = -1;
  std::map<int, IntMatrix> cycles;
  std::map<int, IntMatrix> boundaries;
  std::map<int, HomologyGroup<Integer>> groups;
  /// beta^i in coordinates: cycles_i basis -> cycles_{i+1} basis.
  std::map<int, IntMatrix> beta;

  bool beta_squared_zero() const;
  /// Whether beta^i induces the zero map H^i -> H^{i+1}.
  bool beta_is_zero(int degree) const;
  HomologyPresentation<Integer> homology() const;
};

BocksteinComplex bockstein(const IntComplex& k, const Integer& f);

Report check_leta_mod_f_is_bockstein(const IntComplex& k, const Integer& f);
Report check_homology_formula(const IntComplex& k, const Integer& f);
Report check_composition(const IntComplex& k, const Integer& f, const Integer& g);

/// Exact triangle K -> L -> M with M the mapping cone of alpha, L -> M the
/// inclusion and the stored homotopy K^i -> M^{i-1} witnessing that the
/// composite is null.
struct TrianglePair {
  IntComplex k, l, m;
  IntMap alpha, beta;
  std::map<int, IntMatrix> homotopy;
};

TrianglePair cone_triangle(const IntMap& alpha);
bool homotopy_is_valid(const TrianglePair& t);

struct ExactnessOutcome {
  bool applicable = false;
  Report report;
};
/// When the boundary maps H^i(M/f) -> H^{i+1}(K/f) vanish, certifies that
/// cone(eta_f alpha) -> eta_f(M) is a quasi-isomorphism.
ExactnessOutcome check_exactness_criterion(const TrianglePair& t, const Integer& f);

Report check_mod_g_commutation(const IntComplex& k, const Integer& f, const Integer& g);

struct LetaInverseMaps {
  IntMap map_in;   // eta_f(K) -> K
  IntMap map_out;  // K -> eta_f(K), multiplication by f^d
  Report check;
};
LetaInverseMaps leta_inverse_maps(const IntComplex& k, const Integer& f, int d);

struct Factorization {
  IntMap factor;    // K -> eta_f(M)
  IntMap adjusted;  // alpha + (d h + h d), equal to incl o factor
  IntMatrix homotopy;  // h: K^1 -> M^0
};
struct NoFactorization {
  std::string reason;
};
std::variant<Factorization, NoFactorization> factor_through_leta(const IntMap& alpha, const Integer& f);

/// tau^{<=j} K: degrees below j unchanged, ker d^j in degree j.
IntComplex truncate_above(const IntComplex& k, int j);

struct RandomComplexOptions {
  int max_length = 4;
  std::size_t max_rank = 4;
  long bound = 9;
};
IntComplex random_complex(std::mt19937_64& rng, const RandomComplexOptions& options = {});

/// Random complexes against the homology formula, the Bockstein comparison
/// and composition for (f, g) in {(2,2), (2,3)}.
Report run_leta_suite(int instances, std::uint64_t seed);

}  // namespace aomega
