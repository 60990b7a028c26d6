#include "aomega/qderham.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace aomega {

namespace {

int inversion_sign(const std::vector<int>& word) {
  int inversions = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = i + 1; j < word.size(); ++j) inversions += word[i] > word[j];
  return inversions % 2 ? -1 : 1;
}

std::string exponent_string(const std::vector<std::int64_t>& m) {
  std::string s = "(";
  for (std::size_t j = 0; j < m.size(); ++j) s += (j ? ", " : "") + std::to_string(m[j]);
  return s + ")";
}

/// Runs f on every m in [-B, B]^d, lexicographically.
template <class Fn>
void for_each_monomial(int dim, int bound, Fn f) {
  std::vector<std::int64_t> m(static_cast<std::size_t>(dim), -bound);
  for (bool more = true; more;) {
    f(m);
    more = false;
    for (std::size_t j = m.size(); j-- > 0;) {
      if (++m[j] <= bound) {
        more = true;
        break;
      }
      m[j] = -bound;
    }
  }
}

QLaurentFunction random_function(const AinfModel& model, int dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<std::int64_t> exponent(-2, 2);
  std::uniform_int_distribution<std::int64_t> u_exponent(-2 * model.q_exponent(), 2 * model.q_exponent());
  std::uniform_int_distribution<long> coeff(-3, 3);
  QLaurentFunction f(model, dim);
  for (int t = count(rng); t > 0; --t) {
    std::vector<std::int64_t> m(static_cast<std::size_t>(dim));
    for (auto& x : m) x = exponent(rng);
    Laurent c = model.zero();
    for (int s = count(rng); s > 0; --s)
      c += Laurent::monomial(model.prime(), model.depth(), u_exponent(rng), Integer(coeff(rng)));
    f.add_term(m, c);
  }
  return f;
}

}  // namespace

QLaurentFunction QLaurentFunction::monomial(const AinfModel& model, const Exponent& m, const Laurent& c) {
  QLaurentFunction f(model, static_cast<int>(m.size()));
  f.add_term(m, c);
  return f;
}

Laurent QLaurentFunction::coefficient(const Exponent& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? model_.zero() : it->second;
}

void QLaurentFunction::add_term(const Exponent& m, const Laurent& c) {
  if (m.size() != static_cast<std::size_t>(dim_))
    throw std::invalid_argument("QLaurentFunction: exponent of length " + std::to_string(m.size()) + " in dimension " +
                                std::to_string(dim_));
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

QLaurentFunction QLaurentFunction::q_shift(int j) const {
  if (j < 0 || j >= dim_) throw std::invalid_argument("q_shift: no variable t_" + std::to_string(j));
  QLaurentFunction out(model_, dim_);
  for (const auto& [m, c] : terms_)
    out.add_term(m, c * Laurent::monomial(model_.prime(), model_.depth(),
                                          m[static_cast<std::size_t>(j)] * model_.q_exponent()));
  return out;
}

QLaurentFunction QLaurentFunction::shift(const Exponent& e) const {
  QLaurentFunction out(model_, dim_);
  for (const auto& [m, c] : terms_) {
    Exponent n = m;
    for (std::size_t j = 0; j < n.size(); ++j) n[j] += e.at(j);
    out.add_term(n, c);
  }
  return out;
}

QLaurentFunction operator+(const QLaurentFunction& a, const QLaurentFunction& b) {
  QLaurentFunction out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

QLaurentFunction operator-(const QLaurentFunction& a, const QLaurentFunction& b) {
  QLaurentFunction out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

QLaurentFunction operator*(const QLaurentFunction& a, const QLaurentFunction& b) {
  QLaurentFunction out(a.model_, a.dim_);
  for (const auto& [m, c] : a.terms_)
    for (const auto& [n, d] : b.terms_) {
      QLaurentFunction::Exponent e = m;
      for (std::size_t j = 0; j < e.size(); ++j) e[j] += n[j];
      out.add_term(e, c * d);
    }
  return out;
}

std::string QLaurentFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) s += (s.empty() ? "" : " + ") + ("(" + c.to_string() + ")*t^" + exponent_string(m));
  return s;
}

QLaurentFunction nabla_q(const QLaurentFunction& f, int j) {
  const QLaurentFunction diff = f.q_shift(j) - f;
  const Laurent mu = f.model().mu();
  QLaurentFunction out(f.model(), f.dim());
  for (const auto& [m, c] : diff.terms()) {
    const auto q = laurent_exact_div(c, mu);
    if (!q) throw std::logic_error("nabla_q: q - 1 does not divide " + c.to_string());
    auto e = m;
    e[static_cast<std::size_t>(j)] -= 1;
    out.add_term(e, *q);
  }
  return out;
}

ChainComplex<LaurentRing> q_de_rham_piece(const AinfModel& model, const std::vector<std::int64_t>& m) {
  const int d = static_cast<int>(m.size());
  const LaurentRing r{model.prime(), model.depth()};
  const auto f = QLaurentFunction::monomial(model, m, model.one());
  // t_j nabla_{q,j}(t^m) = lambda_j t^m.
  std::vector<Laurent> lambda;
  for (int j = 0; j < d; ++j) {
    std::vector<std::int64_t> e(m.size(), 0);
    e[static_cast<std::size_t>(j)] = 1;
    const auto g = nabla_q(f, j).shift(e);
    if (g.terms().size() > 1 || (!g.is_zero() && !g.terms().count(m)))
      throw std::logic_error("q_de_rham_piece: nabla_q left the monomial " + exponent_string(m));
    lambda.push_back(g.coefficient(m));
  }
  return build_complex(
      r, 0, d, [&](int i) { return binomial(d, i); },
      [&](int i) {
        const auto src = koszul_subsets(d, i), dst = koszul_subsets(d, i + 1);
        auto mat = zero_matrix(r, dst.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c)
          for (int j = 0; j < d; ++j) {
            if (std::find(src[c].begin(), src[c].end(), j) != src[c].end()) continue;
            std::vector<int> word{j};
            word.insert(word.end(), src[c].begin(), src[c].end());
            const int sign = inversion_sign(word);
            std::sort(word.begin(), word.end());
            const auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), word) - dst.begin());
            const auto& x = lambda[static_cast<std::size_t>(j)];
            mat.at(row, c) = sign > 0 ? x : -x;
          }
        return mat;
      });
}

QDeRhamComplex q_de_rham_complex(const AinfModel& model, int dim, int bound) {
  if (dim < 0 || bound < 0) throw std::invalid_argument("q_de_rham_complex: negative dimension or bound");
  QDeRhamComplex out{model, dim, bound, {}};
  for_each_monomial(dim, bound, [&](const std::vector<std::int64_t>& m) { out.pieces.emplace(m, q_de_rham_piece(model, m)); });
  return out;
}

ChainComplex<IntegerRing> q_to_one(const ChainComplex<LaurentRing>& k) {
  const IntegerRing z;
  std::vector<IntMatrix> diffs;
  for (const auto& m : k.diffs()) {
    auto out = zero_matrix(z, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).at_one();
    diffs.push_back(std::move(out));
  }
  return ChainComplex<IntegerRing>(z, k.lo(), k.ranks(), std::move(diffs));
}

TorusHomology q_de_rham_homology(const ChainComplex<LaurentRing>& piece) {
  const LaurentRing& r = piece.ring();
  const auto d0 = piece.differential(0);
  std::vector<Laurent> g;
  for (std::size_t j = 0; j < d0.rows(); ++j) g.push_back(d0.at(j, 0));
  const auto k = koszul(r, g);
  for (int i = piece.lo(); i < piece.hi(); ++i)
    if (!matrices_equal(r, k.differential(i), piece.differential(i)))
      throw std::logic_error("q_de_rham_homology: piece is not the Koszul complex of its d^0");
  std::vector<RationalExponent> grading(g.size(), RationalExponent(r.p, 0));
  return summand_homology(koszul_summand(r, g, grading));
}

Report compare_with_torus_pipeline(const AinfModel& model, int dim, int bound) {
  Report report("q-de Rham vs torus pipeline");
  const GradingBox box(model.prime(), dim, model.depth(), bound);
  const auto ainf = ainf_omega_torus(model, box);
  const auto qdr = q_de_rham_complex(model, dim, bound);
  const LaurentRing r{model.prime(), model.depth()};
  std::size_t compared = 0, mismatches = 0, extra = 0;
  std::string first;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& cell = ainf.result.cell(i);
    if (!box.is_integral(i)) {
      if (cell.present) {
        ++extra;
        if (first.empty()) first = grading_to_string(box.grading(i)) + ": nonintegral summand survived";
      }
      continue;
    }
    std::vector<std::int64_t> m;
    for (auto k : box.numerators(i)) m.push_back(k / box.denominator());
    const auto& piece = qdr.pieces.at(m);
    ++compared;
    if (!cell.present) {
      ++mismatches;
      if (first.empty()) first = exponent_string(m) + ": torus pipeline killed the summand";
      continue;
    }
    const auto k = ainf.survivors.at(ainf.result.cell_class[i]).summand.complex();
    for (int deg = 0; deg < dim; ++deg)
      if (!matrices_equal(r, k.differential(deg), piece.differential(deg))) {
        ++mismatches;
        if (first.empty())
          first = exponent_string(m) + " d^" + std::to_string(deg) + ": " + matrix_to_string(r, piece.differential(deg)) +
                  " vs " + matrix_to_string(r, k.differential(deg));
      }
  }
  report.add("monomial pieces equal the integral summands of AOmega (" + std::to_string(compared) + " pieces)",
             mismatches == 0, first);
  report.add("nonintegral gradings carry no summand", extra == 0, first);
  return report;
}

Report check_q_to_one(const AinfModel& model, int dim, int bound) {
  Report report("q -> 1");
  const IntegerRing z;
  std::size_t count = 0, mismatches = 0;
  std::string first;
  for_each_monomial(dim, bound, [&](const std::vector<std::int64_t>& m) {
    ++count;
    const auto k = q_to_one(q_de_rham_piece(model, m));
    const auto classical = classical_de_rham_piece(m);
    for (int deg = 0; deg < dim; ++deg)
      if (!matrices_equal(z, k.differential(deg), classical.differential(deg))) {
        ++mismatches;
        if (first.empty()) first = exponent_string(m) + " d^" + std::to_string(deg);
      }
  });
  report.add("q -> 1 gives the classical de Rham complex (" + std::to_string(count) + " monomials)", mismatches == 0,
             first);
  return report;
}

Report check_q_leibniz(const AinfModel& model, int dim, int samples, std::uint64_t seed) {
  Report report("q-Leibniz");
  if (dim < 1) {
    report.add("no directions in dimension 0", true);
    return report;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> direction(0, dim - 1);
  int failures = 0;
  std::string first;
  for (int s = 0; s < samples; ++s) {
    const auto f = random_function(model, dim, rng);
    const auto g = random_function(model, dim, rng);
    const int j = direction(rng);
    const auto lhs = nabla_q(f * g, j);
    const auto rhs = f.q_shift(j) * nabla_q(g, j) + nabla_q(f, j) * g;
    if (!(lhs == rhs)) {
      ++failures;
      if (first.empty()) first = "f = " + f.to_string() + ", g = " + g.to_string();
    }
  }
  report.add("nabla_q(f g) = f(q t) nabla_q(g) + nabla_q(f) g on " + std::to_string(samples) + " pairs", failures == 0,
             first);
  return report;
}

Report check_nabla_commute(const AinfModel& model, int dim, int samples, std::uint64_t seed) {
  Report report("commuting nabla_q");
  std::mt19937_64 rng(seed);
  int failures = 0, checked = 0;
  for (int s = 0; s < samples; ++s) {
    const auto f = random_function(model, dim, rng);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        ++checked;
        failures += !(nabla_q(nabla_q(f, j), i) == nabla_q(nabla_q(f, i), j));
      }
  }
  report.add("nabla_{q,i} nabla_{q,j} = nabla_{q,j} nabla_{q,i} (" + std::to_string(checked) + " cases)", failures == 0);
  return report;
}

}  // namespace aomega
