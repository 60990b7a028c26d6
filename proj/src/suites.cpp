#include "aomega/suites.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "aomega/ainf.hpp"
#include "aomega/cyclotomic.hpp"
#include "aomega/decalage.hpp"
#include "aomega/finite_field.hpp"
#include "aomega/integer.hpp"
#include "aomega/lattice.hpp"
#include "aomega/qderham.hpp"
#include "aomega/torus.hpp"
#include "aomega/witt.hpp"

namespace aomega {

namespace {

std::string table(const std::map<int, std::size_t>& t) {
  std::string s;
  for (const auto& [degree, n] : t) s += (s.empty() ? "" : ",") + std::to_string(n);
  return s.empty() ? "0" : s;
}

std::map<int, std::size_t> binomial_row(int d) {
  std::map<int, std::size_t> out;
  for (int i = 0; i <= d; ++i) out[i] = static_cast<std::size_t>(binomial(d, i));
  return out;
}

std::map<int, std::size_t> nonzero(std::map<int, std::size_t> t) {
  std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
  return t;
}

PerfectionElement random_perfection(std::mt19937_64& rng, std::int64_t p) {
  std::uniform_int_distribution<std::int64_t> coeff(0, p - 1), num(0, 2 * p * p), den(0, 2);
  PerfectionElement::Terms t;
  for (int k = 0; k < 3; ++k) t[RationalExponent(p, num(rng), static_cast<int>(den(rng)))] += coeff(rng);
  return PerfectionElement(p, t);
}

TruncatedWittElement random_witt(std::mt19937_64& rng, std::int64_t p, int m) {
  TruncatedWittElement probe(p, m);
  std::uniform_int_distribution<std::int64_t> coeff(0, probe.modulus() - 1), num(0, 2 * p), den(0, 1);
  TruncatedWittElement::Terms t;
  for (int k = 0; k < 2; ++k) t[RationalExponent(p, num(rng), static_cast<int>(den(rng)))] += coeff(rng);
  return TruncatedWittElement(p, m, t);
}

std::int64_t count_fixed(const FiniteField& k, const FieldMatrix& a) {
  const std::size_t r = a.size();
  std::int64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= k.order();
  std::int64_t fixed = 0;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::vector<FiniteField::Element> v;
    for (std::int64_t rest = idx, i = 0; i < static_cast<std::int64_t>(r); ++i, rest /= k.order())
      v.push_back(k.from_index(rest % k.order()));
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      FiniteField::Element acc = k.zero();
      for (std::size_t l = 0; l < r; ++l) acc = k.add(acc, k.mul(a[i][l], k.frobenius(v[l])));
      ok = acc == v[i];
    }
    fixed += ok;
  }
  return fixed;
}

std::string config_tag(const SessionConfig& c) {
  return "p=" + std::to_string(c.p) + " n=" + std::to_string(c.depth) + " d=" + std::to_string(c.dim) +
         " B=" + std::to_string(c.bound);
}

Report semicontinuity_suite(const SessionConfig& c, std::size_t& instances) {
  Report report("s8-semicontinuity " + config_tag(c));
  const FpPolyRing r{c.p};

  const ChainComplex<FpPolyRing> jump(r, 0, {1, 1}, {RingMatrix<FpPolyRing>(1, 1, FpPoly::monomial(c.p, 1))});
  const auto j = semicontinuity_demo(jump);
  report.add("[F_p[u] --u--> F_p[u]]: generic " + table(j.generic) + " < special " + table(j.special),
             j.holds() && j.verdict.at(0) == FibreVerdict::Strict && j.verdict.at(1) == FibreVerdict::Strict);

  const ChainComplex<FpPolyRing> flat(r, 0, {1, 2, 1}, {zero_matrix(r, 2, 1), zero_matrix(r, 1, 2)});
  report.add("zero differentials: fibres equal", semicontinuity_demo(flat).all_equal());

  std::mt19937_64 rng(c.seed);
  int violations = 0, strict = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = semicontinuity_demo(random_fp_complex(rng, c.p).complex);
    violations += !s.holds();
    strict += s.some_strict();
  }
  report.add("generic <= special on 100 random perfect complexes (" + std::to_string(strict) + " with a jump)",
             violations == 0);
  instances = 102;

  // Only t^0 survives mod p on both fibres while B < p.
  const AinfModel model(c.p, c.depth);
  const int flat_bound = std::min<int>(c.bound, static_cast<int>(c.p) - 1);
  const auto torus = semicontinuity_torus(model, GradingBox(c.p, c.dim, c.depth, flat_bound));
  std::string verdicts;
  for (const auto& [degree, v] : torus.verdict) verdicts += (verdicts.empty() ? "" : ",") + to_string(v);
  report.add("torus d=" + std::to_string(c.dim) + " B=" + std::to_string(flat_bound) + ": generic " +
                 table(torus.generic) + ", special " + table(torus.special) + " (" + verdicts + ")",
             torus.all_equal() && nonzero(torus.generic) == binomial_row(c.dim));
  ++instances;
  if (c.bound >= c.p) {
    const auto wide = semicontinuity_torus(model, GradingBox(c.p, c.dim, c.depth, c.bound));
    report.add("torus d=" + std::to_string(c.dim) + " B=" + std::to_string(c.bound) + ": generic " +
                   table(wide.generic) + " < special " + table(wide.special) + " (p | a adds special classes)",
               wide.holds() && (c.dim == 0 || wide.some_strict()));
    ++instances;
  }
  return report;
}

}  // namespace

void validate(const SessionConfig& c, const SessionLimits& l) {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!is_prime(c.p)) fail("--p " + std::to_string(c.p) + " is not prime");
  if (c.p > l.max_p) fail("--p " + std::to_string(c.p) + " exceeds " + std::to_string(l.max_p));
  if (c.depth < 1 || c.depth > l.max_depth) fail("--depth must lie in [1, " + std::to_string(l.max_depth) + "]");
  if (c.dim < 0 || c.dim > l.max_dim) fail("--dim must lie in [0, " + std::to_string(l.max_dim) + "]");
  if (c.bound < 0 || c.bound > l.max_bound) fail("--bound must lie in [0, " + std::to_string(l.max_bound) + "]");
  if (c.precision < 1 || c.precision > l.max_precision)
    fail("--precision must lie in [1, " + std::to_string(l.max_precision) + "]");
}

void validate_box(const SessionConfig& c, const SessionLimits& l) {
  validate(c, l);
  std::int64_t den = 1;
  for (int i = 0; i < c.depth; ++i) den *= c.p;
  const auto side = static_cast<double>(2 * c.bound * den + 1);
  double size = 1;
  for (int i = 0; i < c.dim; ++i) size *= side;
  if (size > static_cast<double>(l.max_gradings))
    throw std::invalid_argument("grading box (2*" + std::to_string(c.bound) + "*" + std::to_string(den) + "+1)^" +
                                std::to_string(c.dim) + " exceeds " + std::to_string(l.max_gradings) +
                                " gradings; lower --bound, --depth or --dim");
}

void validate_cyclotomic(const SessionConfig& c, int level, const SessionLimits& l) {
  validate_box(c, l);
  const double order = std::pow(static_cast<double>(c.p), level);
  const double side = 2.0 * c.bound * std::pow(static_cast<double>(c.p), c.depth) + 1;
  const double work = side * (order - order / static_cast<double>(c.p));
  if (work > static_cast<double>(l.max_cyclotomic_work))
    throw std::invalid_argument("p = " + std::to_string(c.p) + " at level " + std::to_string(level) +
                                " needs about " + std::to_string(static_cast<long long>(work)) +
                                " cyclotomic coefficients, above the limit " + std::to_string(l.max_cyclotomic_work) +
                                "; lower --p, --depth or --bound");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"s2-notation",        "s5-leta",    "s4-torus-decomp",
                                              "s6-tilde-omega",     "s7-specializations", "s7-qderham",
                                              "s8-semicontinuity",  "witt"};
  return names;
}

Report check_warning_pair(std::int64_t p) {
  Report report("L eta_p on Z/p and Z/p^2");
  const IntegerRing z;
  const Integer pz(p);
  auto two_term = [&](const Integer& g) { return IntComplex(z, 0, {1, 1}, {IntMatrix(1, 1, g)}); };

  const auto h1 = homology_snf(eta_subcomplex(two_term(pz), pz));
  report.add("Z --p--> Z: H*(L eta_p) = 0", h1.is_zero());

  const auto h2 = homology_snf(eta_subcomplex(two_term(pz * pz), pz));
  const auto g = h2.at(1);
  report.add("Z --p^2--> Z: H^1(L eta_p) = Z/p",
             h2.at(0).is_zero() && g.free_rank == 0 && g.torsion.size() == 1 && abs(g.torsion[0]) == pz);
  return report;
}

Report run_witt_suite(std::int64_t p, int precision, const WittSuiteOptions& options) {
  Report report("witt p=" + std::to_string(p));
  std::mt19937_64 rng(options.seed);
  for (int m = 1; m <= precision; ++m) {
    const std::string at = " (m=" + std::to_string(m) + ")";
    int bad_constants = 0;
    const TruncatedWittElement probe(p, m);
    for (std::int64_t c = 0; c < probe.modulus(); ++c) {
      const auto w = TruncatedWittElement::constant(p, m, c);
      bad_constants += !(digits_to_witt(teichmuller_digits(w), p) == w);
    }
    report.add("digits round-trip on all " + std::to_string(probe.modulus()) + " constants" + at, bad_constants == 0);

    int bad_phi = 0, bad_mult = 0, bad_reduce = 0, bad_digits = 0;
    std::string first;
    for (int trial = 0; trial < options.samples; ++trial) {
      const auto a = random_perfection(rng, p), b = random_perfection(rng, p);
      const auto la = teichmuller_lift(a, m);
      if (!(la.frobenius() == teichmuller_lift(a.frobenius(), m))) {
        ++bad_phi;
        if (first.empty()) first = "a = " + a.to_string();
      }
      bad_mult += !(teichmuller_lift(a * b, m) == la * teichmuller_lift(b, m));
      bad_reduce += !(la.reduce() == a);
    }
    // Digits of non-constant elements grow quickly with m.
    for (int trial = 0; trial < std::max(1, options.samples / 10); ++trial) {
      const auto w = random_witt(rng, p, m);
      bad_digits += !(digits_to_witt(teichmuller_digits(w), p) == w);
    }
    const std::string n = std::to_string(options.samples);
    report.add("phi([a]) = [a^p] on " + n + " random elements" + at, bad_phi == 0, first);
    report.add("[ab] = [a][b] on " + n + " random pairs" + at, bad_mult == 0);
    report.add("[a] reduces to a" + at, bad_reduce == 0);
    report.add("digits round-trip on random elements" + at, bad_digits == 0);
  }
  return report;
}

Report run_fixed_point_suite(int trials, std::uint64_t seed) {
  Report report("frobenius fixed points");
  std::mt19937_64 rng(seed);
  for (auto [p, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const FiniteField k(p, m);
    std::uniform_int_distribution<std::int64_t> pick(0, k.order() - 1);
    int checked = 0, bad = 0;
    for (std::size_t r = 1; r <= 2; ++r)
      for (int trial = 0; trial < trials; ++trial) {
        FieldMatrix a(r, std::vector<FiniteField::Element>(r));
        for (auto& row : a)
          for (auto& x : row) x = k.from_index(pick(rng));
        if (field_rank(k, a) != static_cast<int>(r)) continue;
        const auto res = frobenius_fixed_points(k, a);
        std::int64_t expected = 1;
        for (int i = 0; i < res.fp_dimension; ++i) expected *= p;
        ++checked;
        bad += count_fixed(k, a) != expected || res.spans != (res.fp_dimension == static_cast<int>(r)) ||
               res.requires_extension == res.spans;
      }
    report.add("F_" + std::to_string(k.order()) + ": dim_F_p L against enumeration (" + std::to_string(checked) +
                   " modules)",
               bad == 0);
  }
  return report;
}

Report check_torus_decomposition(const SessionConfig& c) {
  validate_cyclotomic(c, c.depth);
  Report report("torus decomposition " + config_tag(c));
  const AinfModel model(c.p, c.depth);
  const GradingBox box(c.p, c.dim, c.depth, c.bound);
  const auto a = build_torus_cohomology(model, box);
  const auto oc = build_torus_cohomology_oc(box);

  std::size_t bad_weights = 0;
  for (std::size_t v = 0; v < box.side(); ++v) {
    const RationalExponent e(c.p, box.numerator_of_value(v), c.depth);
    bad_weights += !(a.weights[v] == model.eps_power_minus_one(e)) ||
                   !(Cyclotomic::reduce(a.weights[v], c.depth) == oc.weights[v]);
  }
  report.add("coordinate weights are q^a - 1 and theta(q^a - 1) (" + std::to_string(box.side()) + " values)",
             bad_weights == 0);

  // Every grading of small boxes, a seeded sample of large ones.
  constexpr std::size_t kFull = 100000;
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::size_t> pick(0, box.size() - 1);
  const std::size_t n = std::min(box.size(), kFull);
  std::size_t bad = 0;
  std::string first;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t i = box.size() <= kFull ? t : pick(rng);
    const auto grading = box.grading(i);
    const auto s = a.summand(i);
    bool ok = box.index_of(grading) == i && s.elements.size() == static_cast<std::size_t>(c.dim);
    for (std::size_t j = 0; ok && j < grading.size(); ++j) ok = s.elements[j] == model.eps_power_minus_one(grading[j]);
    if (!ok) {
      ++bad;
      if (first.empty()) first = grading_to_string(grading);
    }
  }
  report.add("summand at a is K(A; q^{a_1} - 1, ..., q^{a_d} - 1) (" + std::to_string(n) + " gradings)", bad == 0,
             first);
  report.add("box contains 0", box.grading(box.zero_index()) ==
                                   std::vector<RationalExponent>(static_cast<std::size_t>(c.dim), RationalExponent(c.p, 0)));
  return report;
}

SuiteOutcome run_suite(const std::string& name, const SessionConfig& c) {
  validate(c);
  SuiteOutcome out{name, c, 0, Report(name + " " + config_tag(c))};
  const AinfModel model(c.p, c.depth);
  if (name == "s2-notation") {
    const NotationCheckOptions options{50, c.seed};
    out.report.merge(check_notation_identities(model, options));
    out.instances = static_cast<std::size_t>(options.samples);
  } else if (name == "s5-leta") {
    out.report.merge(check_warning_pair(c.p), "warning pair: ");
    out.report.merge(run_leta_suite(200, c.seed));
    out.instances = 200;
  } else if (name == "s4-torus-decomp") {
    out.report.merge(check_torus_decomposition(c));
    out.instances = GradingBox(c.p, c.dim, c.depth, c.bound).size();
  } else if (name == "s6-tilde-omega") {
    validate_cyclotomic(c, c.depth);
    const auto tilde = tilde_omega_torus(GradingBox(c.p, c.dim, c.depth, c.bound));
    out.report.merge(check_tilde_omega_ranks(tilde));
    out.report.merge(check_twist_additivity(tilde));
    out.instances = tilde.box.size();
  } else if (name == "s7-specializations") {
    validate_cyclotomic(c, c.depth + 1);
    const GradingBox box(c.p, c.dim, c.depth, c.bound);
    out.report.merge(run_torus_pipeline(model, box));
    out.instances = box.size();
  } else if (name == "s7-qderham") {
    validate_box(c);
    out.report.merge(compare_with_torus_pipeline(model, c.dim, c.bound));
    out.report.merge(check_q_to_one(model, c.dim, c.bound));
    out.report.merge(check_q_leibniz(model, std::max(c.dim, 1), 100, c.seed));
    out.report.merge(check_nabla_commute(model, c.dim, 30, c.seed + 1));
    out.instances = GradingBox(c.p, c.dim, c.depth, c.bound).size();
  } else if (name == "s8-semicontinuity") {
    validate_box(c);
    out.report.merge(semicontinuity_suite(c, out.instances));
  } else if (name == "witt") {
    out.report.merge(run_witt_suite(c.p, c.precision, {100, c.seed}));
    out.report.merge(run_fixed_point_suite(10, c.seed));
    out.instances = 100;
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return out;
}

}  // namespace aomega
