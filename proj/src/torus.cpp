#include "aomega/torus.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "aomega/ainf.hpp"
#include "aomega/lattice.hpp"

namespace aomega {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 31;
constexpr std::size_t kMaxProblems = 10;

std::string canonical_generator(const LaurentRing&, const Laurent& g) {
  Laurent s = strip_prime_to_p_factors(g);
  if (s.coefficient(s.max_exponent()) < 0) s = -s;
  return s.to_string();
}

std::string canonical_generator(const CyclotomicRing&, const Cyclotomic& g) { return g.to_string(); }

template <class Ring>
TorusHomology koszul_homology(const KoszulSummand<Ring>& k, std::string& note) {
  TorusHomology h;
  auto diag = koszul_to_diagonal(k);
  if (const auto* ns = std::get_if<NotStructured>(&diag)) {
    note = ns->reason;
    return h;
  }
  const auto raw = homology_diagonal(std::get<DiagonalComplex<Ring>>(diag));
  for (const auto& [degree, g] : raw.groups) {
    auto& out = h.groups[degree];
    out.free_rank = g.free_rank;
    for (const auto& t : g.torsion) out.torsion.push_back(canonical_generator(k.ring, t));
    std::sort(out.torsion.begin(), out.torsion.end());
  }
  h.prune();
  return h;
}

TorusHomology integer_homology(const HomologyPresentation<Integer>& raw) {
  TorusHomology h;
  for (const auto& [degree, g] : raw.groups) {
    auto& out = h.groups[degree];
    out.free_rank = g.free_rank;
    for (const auto& t : g.torsion) out.torsion.push_back(t.get_str());
  }
  h.prune();
  return h;
}

std::map<int, int> twist_tags(const TorusHomology& h) {
  std::map<int, int> out;
  for (const auto& [degree, g] : h.groups)
    if (!g.is_zero()) out[degree] = -degree;
  return out;
}

}  // namespace

TorusHomology summand_homology(const KoszulSummand<LaurentRing>& k) {
  std::string note;
  auto h = koszul_homology(k, note);
  if (!note.empty()) throw std::logic_error("summand_homology: " + note);
  return h;
}

std::string to_string(const TorusHomology& h) {
  if (h.is_zero()) return "0";
  std::string s;
  for (const auto& [degree, g] : h.groups) {
    if (g.is_zero()) continue;
    if (!s.empty()) s += ", ";
    s += "H" + std::to_string(degree) + "=";
    std::string part;
    if (g.free_rank) part = "R^" + std::to_string(g.free_rank);
    for (const auto& t : g.torsion) part += (part.empty() ? "" : " + ") + ("R/(" + t + ")");
    s += part;
  }
  return s;
}

namespace {

/// Per-coordinate facts for a chain of L eta steps. Coordinates with equal
/// weights share an id; an element exists before step s iff every earlier
/// step divided it.
template <class Ring>
class LetaChain {
 public:
  using E = typename Ring::Element;

  LetaChain(const Ring& ring, const std::vector<E>& weights, std::vector<E> steps)
      : steps_(std::move(steps)), elements_(steps_.size() + 1), facts_(steps_.size()) {
    std::map<std::string, std::size_t> seen;
    for (const auto& w : weights) {
      auto [it, fresh] = seen.emplace(ring.str(w), elements_[0].size());
      if (fresh) elements_[0].push_back(w);
      id_of_value_.push_back(it->second);
    }
    const std::size_t n = elements_[0].size();
    for (std::size_t s = 0; s < steps_.size(); ++s) {
      elements_[s + 1].resize(n);
      facts_[s].resize(n);
      for (std::size_t id = 0; id < n; ++id) {
        if (!elements_[s][id]) continue;
        const E& g = *elements_[s][id];
        elements_[s + 1][id] = ring.exact_div(g, steps_[s]);
        facts_[s][id] = {elements_[s + 1][id].has_value(), !ring.is_zero(g) && ring.divides(g, steps_[s])};
      }
    }
  }

  std::size_t id(std::size_t value) const { return id_of_value_[value]; }
  std::size_t distinct() const { return elements_[0].size(); }
  std::size_t steps() const { return steps_.size(); }
  const E& element(std::size_t step, std::size_t id) const { return *elements_[step][id]; }

  /// nullopt when every step divides; otherwise the case that stopped it.
  std::optional<LetaCase> stop(const std::vector<std::size_t>& ids) const {
    for (std::size_t s = 0; s < steps_.size(); ++s) {
      buffer_.clear();
      for (std::size_t id : ids) buffer_.push_back(facts_[s][id]);
      const LetaCase c = leta_case(buffer_);
      if (c != LetaCase::Divide) return c;
    }
    return std::nullopt;
  }

 private:
  std::vector<E> steps_;
  std::vector<std::size_t> id_of_value_;
  std::vector<std::vector<std::optional<E>>> elements_;
  std::vector<std::vector<LetaElementFacts>> facts_;
  mutable std::vector<LetaElementFacts> buffer_;
};

/// Walks the box; survivors of the chain get one class per distinct id
/// tuple, built by make_cell(ids, index, class).
template <class Ring, class CellFn>
void run_graded(const GradingBox& box, const LetaChain<Ring>& chain, TorusCohomologyResult& result, CellFn make_cell) {
  result.box = box;
  result.classes.assign(1, TorusCell{});
  result.cell_class.assign(box.size(), 0);
  std::unordered_map<std::uint64_t, std::uint32_t> memo;
  const auto d = static_cast<std::size_t>(box.dim());
  const std::uint64_t radix = chain.distinct();
  std::vector<std::size_t> values(d, 0), ids(d);
  std::uint32_t not_structured = 0;
  for (std::size_t index = 0; index < box.size(); ++index) {
    for (std::size_t j = 0; j < d; ++j) ids[j] = chain.id(values[j]);
    const auto stopped = chain.stop(ids);
    if (!stopped) {
      std::uint64_t key = 0;
      for (std::size_t id : ids) key = key * radix + id;
      auto [it, fresh] = memo.emplace(key, static_cast<std::uint32_t>(result.classes.size()));
      if (fresh) result.classes.push_back(make_cell(ids, index, it->second));
      result.cell_class[index] = it->second;
    } else if (*stopped == LetaCase::NotStructured) {
      if (!not_structured) {
        not_structured = static_cast<std::uint32_t>(result.classes.size());
        result.classes.push_back(TorusCell{false, {}, 0, {}, "not structured"});
      }
      result.cell_class[index] = not_structured;
      if (result.problems.size() < kMaxProblems)
        result.problems.push_back(grading_to_string(box.grading(index)) + ": L eta not structured");
    }
    for (std::size_t j = d; j-- > 0;) {
      if (++values[j] < box.side()) break;
      values[j] = 0;
    }
  }
}

AinfOmegaTorus ainf_pipeline(const AinfModel& model, const GradingBox& box, std::vector<Laurent> steps,
                             const std::string& stage) {
  if (model.prime() != box.prime() || model.depth() != box.depth())
    throw std::invalid_argument("ainf_omega_torus: model and box disagree on (p, depth)");
  const auto sum = build_torus_cohomology(model, box);
  const LetaChain<LaurentRing> chain(sum.ring, sum.weights, std::move(steps));
  const std::size_t last = chain.steps();
  AinfOmegaTorus out{model, {}, {}};
  out.result.stage = stage;
  out.result.ring = sum.ring.tag();
  run_graded(box, chain, out.result, [&](const std::vector<std::size_t>& ids, std::size_t index, std::uint32_t cls) {
    const auto base = sum.summand(index);
    AinfSurvivor s{base, base};
    for (std::size_t j = 0; j < ids.size(); ++j) {
      s.before_xi.elements[j] = chain.element(last - 1, ids[j]);
      s.summand.elements[j] = chain.element(last, ids[j]);
    }
    s.before_xi.twist = static_cast<int>(last) - 1;
    s.summand.twist = static_cast<int>(last);
    TorusCell c;
    c.present = true;
    c.leta = s.summand.twist;
    c.homology = koszul_homology(s.summand, c.note);
    c.twist = twist_tags(c.homology);
    out.survivors.emplace(cls, std::move(s));
    return c;
  });
  return out;
}

bool binomial_pattern(const TorusHomology& h, int d) {
  for (int i = 0; i <= d; ++i) {
    const auto g = h.at(i);
    if (g.free_rank != binomial(d, i) || !g.torsion.empty()) return false;
  }
  for (const auto& [degree, g] : h.groups)
    if ((degree < 0 || degree > d) && !g.is_zero()) return false;
  return true;
}

std::map<int, std::size_t> free_ranks(const TorusHomology& h) {
  std::map<int, std::size_t> out;
  for (const auto& [degree, g] : h.groups)
    if (g.free_rank) out[degree] = g.free_rank;
  return out;
}

std::map<int, std::size_t> binomial_table(int d) {
  std::map<int, std::size_t> out;
  for (int i = 0; i <= d; ++i) out[i] = binomial(d, i);
  return out;
}

std::string table_string(const std::map<int, std::size_t>& t) {
  std::string s;
  for (const auto& [degree, r] : t) s += (s.empty() ? "" : " ") + std::to_string(degree) + ":" + std::to_string(r);
  return s.empty() ? "(none)" : s;
}

}  // namespace

GradingBox::GradingBox(std::int64_t p, int dim, int depth, int bound)
    : p_(p), dim_(dim), depth_(depth), bound_(bound) {
  if (!is_prime(p)) throw std::invalid_argument("GradingBox: p = " + std::to_string(p) + " is not prime");
  if (dim < 0) throw std::invalid_argument("GradingBox: negative dimension");
  if (depth < 1 || depth > kMaxDepth) throw std::invalid_argument("GradingBox: depth must lie in [1, 8]");
  if (bound < 0) throw std::invalid_argument("GradingBox: negative bound");
  den_ = ipow(p, static_cast<unsigned>(depth));
  side_ = static_cast<std::size_t>(2 * bound * den_ + 1);
  size_ = 1;
  for (int j = 0; j < dim; ++j) {
    if (size_ > kMaxCells / side_) throw std::invalid_argument("GradingBox: more than 2^31 gradings");
    size_ *= side_;
  }
}

std::vector<std::size_t> GradingBox::values(std::size_t index) const {
  std::vector<std::size_t> v(static_cast<std::size_t>(dim_));
  for (std::size_t j = v.size(); j-- > 0;) {
    v[j] = index % side_;
    index /= side_;
  }
  return v;
}

std::vector<std::int64_t> GradingBox::numerators(std::size_t index) const {
  std::vector<std::int64_t> out;
  for (std::size_t v : values(index)) out.push_back(numerator_of_value(v));
  return out;
}

std::vector<RationalExponent> GradingBox::grading(std::size_t index) const {
  std::vector<RationalExponent> out;
  for (std::int64_t k : numerators(index)) out.emplace_back(p_, k, depth_);
  return out;
}

bool GradingBox::is_integral(std::size_t index) const {
  for (std::int64_t k : numerators(index))
    if (k % den_ != 0) return false;
  return true;
}

std::optional<std::size_t> GradingBox::index_of(const std::vector<RationalExponent>& a) const {
  if (a.size() != static_cast<std::size_t>(dim_)) return std::nullopt;
  std::size_t index = 0;
  for (const auto& x : a) {
    if (x.prime() != p_ || x.den_pow() > depth_) return std::nullopt;
    const std::int64_t k = x.scaled(depth_);
    if (k < -bound_ * den_ || k > bound_ * den_) return std::nullopt;
    index = index * side_ + static_cast<std::size_t>(k + bound_ * den_);
  }
  return index;
}

std::size_t GradingBox::zero_index() const {
  std::size_t index = 0;
  for (int j = 0; j < dim_; ++j) index = index * side_ + static_cast<std::size_t>(bound_ * den_);
  return index;
}

std::string grading_to_string(const std::vector<RationalExponent>& a) {
  std::string s = "(";
  for (std::size_t j = 0; j < a.size(); ++j) s += (j ? ", " : "") + a[j].to_string();
  return s + ")";
}

GradedKoszulSum<LaurentRing> build_torus_cohomology(const AinfModel& model, const GradingBox& box) {
  if (model.prime() != box.prime() || model.depth() != box.depth())
    throw std::invalid_argument("build_torus_cohomology: model and box disagree on (p, depth)");
  GradedKoszulSum<LaurentRing> sum{LaurentRing{model.prime(), model.depth()}, box, {}, 0};
  for (std::size_t v = 0; v < box.side(); ++v)
    sum.weights.push_back(model.eps_power_minus_one(RationalExponent(box.prime(), box.numerator_of_value(v), box.depth())));
  return sum;
}

GradedKoszulSum<CyclotomicRing> build_torus_cohomology_oc(const GradingBox& box, int frobenius_twist) {
  if (frobenius_twist < 0) throw std::invalid_argument("build_torus_cohomology_oc: negative twist");
  const int level = box.depth() + frobenius_twist;
  const CyclotomicRing ring{box.prime(), level};
  GradedKoszulSum<CyclotomicRing> sum{ring, box, {}, frobenius_twist};
  for (std::size_t v = 0; v < box.side(); ++v)
    sum.weights.push_back(Cyclotomic::zeta_power(box.prime(), level, box.numerator_of_value(v)) - ring.one());
  return sum;
}

std::map<int, std::size_t> TorusCohomologyResult::free_rank_table() const {
  std::vector<std::size_t> count(classes.size(), 0);
  for (auto c : cell_class) ++count[c];
  std::map<int, std::size_t> out;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const auto& [degree, g] : classes[c].homology.groups) out[degree] += g.free_rank * count[c];
  return out;
}

std::size_t TorusCohomologyResult::nonzero_cells() const {
  std::size_t n = 0;
  for (auto c : cell_class) n += !classes[c].homology.is_zero();
  return n;
}

TorusCohomologyResult tilde_omega_torus(const GradingBox& box, int frobenius_twist) {
  const auto sum = build_torus_cohomology_oc(box, frobenius_twist);
  const CyclotomicRing& r = sum.ring;
  const Cyclotomic f = Cyclotomic::zeta_power(r.p, r.level, ipow(r.p, static_cast<unsigned>(r.level - 1))) - r.one();
  const LetaChain<CyclotomicRing> chain(r, sum.weights, {f});
  TorusCohomologyResult result;
  result.stage = frobenius_twist ? "tilde-frobenius-" + std::to_string(frobenius_twist) : "tilde";
  result.ring = r.tag();
  run_graded(box, chain, result, [&](const std::vector<std::size_t>& ids, std::size_t index, std::uint32_t) {
    auto k = sum.summand(index);
    for (std::size_t j = 0; j < ids.size(); ++j) k.elements[j] = chain.element(1, ids[j]);
    k.twist = 1;
    TorusCell c;
    c.present = true;
    c.leta = 1;
    c.homology = koszul_homology(k, c.note);
    c.twist = twist_tags(c.homology);
    return c;
  });
  return result;
}

Report check_tilde_omega_ranks(const TorusCohomologyResult& tilde) {
  const GradingBox& box = tilde.box;
  const int d = box.dim();
  Report report("tilde omega ranks");
  std::vector<char> pattern(tilde.classes.size()), zero(tilde.classes.size());
  for (std::size_t c = 0; c < tilde.classes.size(); ++c) {
    pattern[c] = binomial_pattern(tilde.classes[c].homology, d);
    zero[c] = tilde.classes[c].homology.is_zero() && tilde.classes[c].note.empty();
  }
  std::size_t integral = 0, nonintegral = 0, bad_integral = 0, bad_nonintegral = 0;
  std::string first;
  const auto d_size = static_cast<std::size_t>(d);
  std::vector<std::size_t> values(d_size, 0);
  for (std::size_t index = 0; index < box.size(); ++index) {
    bool is_int = true;
    for (std::size_t v : values) is_int = is_int && box.numerator_of_value(v) % box.denominator() == 0;
    const auto c = tilde.cell_class[index];
    const bool ok = is_int ? pattern[c] : zero[c];
    (is_int ? integral : nonintegral)++;
    if (!ok) {
      (is_int ? bad_integral : bad_nonintegral)++;
      if (first.empty())
        first = grading_to_string(box.grading(index)) + ": " + to_string(tilde.classes[c].homology);
    }
    for (std::size_t j = d_size; j-- > 0;) {
      if (++values[j] < box.side()) break;
      values[j] = 0;
    }
  }
  report.add("integral gradings carry free rank binomial(d, i) in degree i (" + std::to_string(integral) + " gradings)",
             bad_integral == 0, first);
  report.add("nonintegral gradings carry zero (" + std::to_string(nonintegral) + " gradings)", bad_nonintegral == 0,
             first);
  report.add("no unstructured summands", tilde.problems.empty(),
             tilde.problems.empty() ? "" : tilde.problems.front());
  return report;
}

Report check_twist_additivity(const TorusCohomologyResult& r) {
  Report report("twist tags");
  std::size_t failures = 0;
  std::string first;
  for (const auto& cell : r.classes) {
    for (const auto& [i, ti] : cell.twist)
      for (const auto& [j, tj] : cell.twist) {
        auto it = cell.twist.find(i + j);
        if (it == cell.twist.end()) continue;
        if (it->second != ti + tj) {
          ++failures;
          if (first.empty()) first = "degrees " + std::to_string(i) + "+" + std::to_string(j);
        }
      }
    for (const auto& [degree, g] : cell.homology.groups)
      if (!g.is_zero() && !cell.twist.count(degree)) {
        ++failures;
        if (first.empty()) first = "untagged degree " + std::to_string(degree);
      }
  }
  report.add("twist tags {-i} are additive under wedge", failures == 0, first);
  return report;
}

AinfOmegaTorus ainf_omega_torus(const AinfModel& model, const GradingBox& box) {
  return ainf_pipeline(model, box, {model.phi_inverse_mu(), model.xi()}, "ainf");
}

AinfOmegaTorus ainf_omega_torus_mu(const AinfModel& model, const GradingBox& box) {
  return ainf_pipeline(model, box, {model.mu()}, "ainf-mu");
}

Report check_leta_mu_composite(const AinfOmegaTorus& two_step, const AinfOmegaTorus& one_step) {
  Report report("L eta_mu = L eta_xi o L eta_{phi^{-1}(mu)}");
  const auto& a = two_step.result;
  const auto& b = one_step.result;
  if (!(a.box == b.box)) {
    report.add("same box", false);
    return report;
  }
  std::size_t homology_mismatch = 0, summand_mismatch = 0;
  std::string first;
  for (std::size_t i = 0; i < a.box.size(); ++i) {
    const auto& ca = a.cell(i);
    const auto& cb = b.cell(i);
    if (ca.present != cb.present || !(ca.homology == cb.homology)) {
      ++homology_mismatch;
      if (first.empty()) first = grading_to_string(a.box.grading(i)) + ": " + to_string(ca.homology) + " vs " +
                                 to_string(cb.homology);
      continue;
    }
    if (!ca.present) continue;
    const auto& sa = two_step.survivors.at(a.cell_class[i]).summand;
    const auto& sb = one_step.survivors.at(b.cell_class[i]).summand;
    if (sa.elements != sb.elements) {
      ++summand_mismatch;
      if (first.empty()) first = grading_to_string(a.box.grading(i)) + ": summands differ";
    }
  }
  report.add("same homology at every grading", homology_mismatch == 0, first);
  report.add("same surviving summands", summand_mismatch == 0, first);
  return report;
}

SpecializationResult specialize_hodge_tate(const AinfOmegaTorus& ainf) {
  const GradingBox& box = ainf.result.box;
  const CyclotomicRing ring{box.prime(), box.depth() + 1};
  SpecializationResult out;
  auto& ht = out.result;
  ht.stage = "ht";
  ht.ring = ring.tag();
  ht.box = box;
  ht.classes.assign(1, TorusCell{});
  std::vector<std::uint32_t> class_map(ainf.result.classes.size(), 0);
  for (const auto& [cls, s] : ainf.survivors) {
    std::vector<Cyclotomic> g;
    for (const auto& x : s.summand.elements) g.push_back(theta_tilde(x));
    const auto k = koszul_summand(ring, std::move(g), s.summand.grading, s.summand.twist);
    TorusCell c;
    c.present = true;
    c.leta = k.twist;
    c.homology = koszul_homology(k, c.note);
    c.twist = twist_tags(c.homology);
    class_map[cls] = static_cast<std::uint32_t>(ht.classes.size());
    ht.classes.push_back(std::move(c));
  }
  ht.cell_class.resize(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) ht.cell_class[i] = class_map[ainf.result.cell_class[i]];

  const auto twisted = tilde_omega_torus(box, 1);
  std::size_t mismatches = 0;
  std::string first;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& a = ht.cell(i).homology;
    const auto& b = twisted.cell(i).homology;
    if (a == b) continue;
    ++mismatches;
    if (first.empty())
      first = grading_to_string(box.grading(i)) + ": AOmega/xi_tilde " + to_string(a) + " vs tilde omega at a/p " +
              to_string(b);
  }
  out.report = Report("Hodge-Tate specialization");
  out.report.add("AOmega/xi_tilde agrees with Frobenius-twisted tilde omega on all " + std::to_string(box.size()) +
                     " cells",
                 mismatches == 0, first);
  out.report.add("no unstructured summands", twisted.problems.empty() && ainf.result.problems.empty());
  return out;
}

ChainComplex<IntegerRing> classical_de_rham_piece(const std::vector<std::int64_t>& a) {
  const int d = static_cast<int>(a.size());
  const IntegerRing z;
  return build_complex(
      z, 0, d, [&](int i) { return binomial(d, i); },
      [&](int i) {
        const auto src = koszul_subsets(d, i), dst = koszul_subsets(d, i + 1);
        auto m = zero_matrix(z, dst.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c)
          for (int j = 0; j < d; ++j) {
            if (std::find(src[c].begin(), src[c].end(), j) != src[c].end()) continue;
            // dlog t_j ^ dlog t_S: bubble the word (j, S) into order, one sign per swap.
            std::vector<int> word{j};
            word.insert(word.end(), src[c].begin(), src[c].end());
            int sign = 1;
            for (std::size_t x = 0; x < word.size(); ++x)
              for (std::size_t y = 0; y + 1 < word.size() - x; ++y)
                if (word[y] > word[y + 1]) {
                  std::swap(word[y], word[y + 1]);
                  sign = -sign;
                }
            const auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), word) - dst.begin());
            m.at(row, c) += sign * a[static_cast<std::size_t>(j)];
          }
        return m;
      });
}

DeRhamResult specialize_de_rham(const AinfOmegaTorus& ainf) {
  const GradingBox& box = ainf.result.box;
  const AinfModel& model = ainf.model;
  const Laurent xi = model.xi();
  const IntegerRing z;
  const CyclotomicRing oc{box.prime(), box.depth()};
  DeRhamResult out;
  auto& dr = out.result;
  dr.stage = "dr";
  dr.ring = "Z";
  dr.box = box;
  dr.classes.assign(1, TorusCell{});
  std::vector<std::uint32_t> class_map(ainf.result.classes.size(), 0);
  std::size_t not_integral = 0, beta_fail = 0, classical_fail = 0, reduction_fail = 0;
  std::string first;
  auto note = [&first](const std::string& s) {
    if (first.empty()) first = s;
  };
  for (const auto& [cls, s] : ainf.survivors) {
    const std::string where = grading_to_string(s.summand.grading);
    std::vector<std::int64_t> a;
    for (const auto& x : s.summand.grading) {
      if (!x.is_integral()) {
        ++not_integral;
        note(where + ": surviving grading is not integral");
      }
      a.push_back(x.numerator());
    }
    // beta_xi on H*(K/xi) for K = K(A; xi [a_j]_q): the entries d/xi mod xi.
    std::vector<Integer> beta;
    bool ok = true;
    for (std::size_t j = 0; j < s.before_xi.elements.size(); ++j) {
      const auto q = laurent_exact_div(s.before_xi.elements[j], xi);
      if (!q) {
        ok = false;
        break;
      }
      const Cyclotomic t = theta(*q);
      if (t != Cyclotomic::constant(t.prime(), t.level(), t.coeffs()[0])) {
        ok = false;
        break;
      }
      beta.push_back(t.coeffs()[0]);
    }
    if (!ok) {
      ++beta_fail;
      note(where + ": beta_xi is not an integer multiplication");
      continue;
    }
    for (std::size_t j = 0; j < a.size(); ++j)
      if (beta[j] != Integer(static_cast<long>(a[j]))) {
        ++beta_fail;
        note(where + ": beta_xi entry " + beta[j].get_str() + " vs a_j = " + std::to_string(a[j]));
      }
    const auto piece = koszul(z, beta);
    const auto classical = classical_de_rham_piece(a);
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
      if (!matrices_equal(z, piece.differential(i), classical.differential(i))) {
        ++classical_fail;
        note(where + ": d^" + std::to_string(i) + " = " + matrix_to_string(z, piece.differential(i)) + " vs classical " +
             matrix_to_string(z, classical.differential(i)));
      }
    // AOmega/xi read directly: theta of the surviving Koszul summand.
    const auto reduced = mod_xi(s.summand.complex());
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      const auto m = reduced.differential(i);
      const auto b = piece.differential(i);
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
          if (!(m.at(r, c) == Cyclotomic::constant(oc.p, oc.level, b.at(r, c)))) {
            ++reduction_fail;
            note(where + ": AOmega/xi differs from the Bockstein complex");
          }
    }
    TorusCell c;
    c.present = true;
    c.homology = integer_homology(homology_snf(piece));
    class_map[cls] = static_cast<std::uint32_t>(dr.classes.size());
    dr.classes.push_back(std::move(c));
    out.pieces.emplace(class_map[cls], piece);
  }
  dr.cell_class.resize(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) dr.cell_class[i] = class_map[ainf.result.cell_class[i]];
  out.report = Report("de Rham specialization");
  const std::string n = std::to_string(ainf.survivors.size());
  out.report.add("surviving gradings are integral (" + n + ")", not_integral == 0, first);
  out.report.add("beta_xi is multiplication by a_j", beta_fail == 0, first);
  out.report.add("beta_xi complex equals the classical de Rham differential", classical_fail == 0, first);
  out.report.add("AOmega/xi equals the beta_xi complex", reduction_fail == 0, first);
  return out;
}

EtaleRanks etale_rank_torus(const AinfOmegaTorus& ainf) {
  const GradingBox& box = ainf.result.box;
  const auto sum = build_torus_cohomology(ainf.model, box);
  const auto d = static_cast<std::size_t>(box.dim());
  EtaleRanks out;
  // Over a field, K(g_1..g_d) ~ K(c_1 g_1..c_d g_d) for nonzero c_j, so the
  // ranks only depend on which weights vanish.
  std::map<std::uint64_t, std::map<int, std::size_t>> memo;
  auto mask_of = [&](const std::vector<std::size_t>& values) {
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < d; ++j)
      if (sum.weights[values[j]].is_zero()) mask |= std::uint64_t{1} << j;
    return mask;
  };
  auto raw_ranks = [&](std::size_t index, const std::vector<std::size_t>& values) -> const std::map<int, std::size_t>& {
    const auto mask = mask_of(values);
    auto it = memo.find(mask);
    if (it == memo.end()) it = memo.emplace(mask, fraction_field_homology_ranks(sum.summand(index).complex())).first;
    return it->second;
  };
  std::vector<std::size_t> values(d, 0);
  for (std::size_t index = 0; index < box.size(); ++index) {
    for (const auto& [degree, r] : raw_ranks(index, values)) out.ranks[degree] += r;
    for (std::size_t j = d; j-- > 0;) {
      if (++values[j] < box.side()) break;
      values[j] = 0;
    }
  }
  std::erase_if(out.ranks, [](const auto& kv) { return kv.second == 0; });
  out.report = Report("etale ranks");
  out.report.add("ranks over Q(u) are binomial(d, i): " + table_string(out.ranks), out.ranks == binomial_table(box.dim()));
  std::size_t mismatches = 0;
  std::string first;
  for (const auto& [cls, s] : ainf.survivors) {
    const auto index = box.index_of(s.summand.grading);
    if (!index) continue;
    auto after = fraction_field_homology_ranks(s.summand.complex());
    auto before = raw_ranks(*index, box.values(*index));
    std::erase_if(after, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(before, [](const auto& kv) { return kv.second == 0; });
    if (after != before) {
      ++mismatches;
      if (first.empty()) first = grading_to_string(s.summand.grading);
    }
  }
  out.report.add("L eta is invisible after inverting mu (" + std::to_string(ainf.survivors.size()) + " summands)",
                 mismatches == 0, first);
  return out;
}

std::string to_string(FibreVerdict v) {
  switch (v) {
    case FibreVerdict::Equal:
      return "equal";
    case FibreVerdict::Strict:
      return "strict";
    case FibreVerdict::Violated:
      return "violated";
  }
  return "?";
}

bool SemicontinuityResult::holds() const {
  return std::none_of(verdict.begin(), verdict.end(), [](const auto& kv) { return kv.second == FibreVerdict::Violated; });
}

bool SemicontinuityResult::all_equal() const {
  return std::all_of(verdict.begin(), verdict.end(), [](const auto& kv) { return kv.second == FibreVerdict::Equal; });
}

bool SemicontinuityResult::some_strict() const {
  return std::any_of(verdict.begin(), verdict.end(), [](const auto& kv) { return kv.second == FibreVerdict::Strict; });
}

SemicontinuityResult semicontinuity_demo(const ChainComplex<FpPolyRing>& k) {
  const FpPolyRing& r = k.ring();
  std::vector<RingMatrix<FpPolyRing>> special_diffs;
  for (const auto& m : k.diffs()) {
    auto s = zero_matrix(r, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) s.at(i, j) = FpPoly::constant(r.p, m.at(i, j).coeff(0));
    special_diffs.push_back(std::move(s));
  }
  const ChainComplex<FpPolyRing> special(r, k.lo(), k.ranks(), std::move(special_diffs));
  SemicontinuityResult out;
  out.generic = fraction_field_homology_ranks(k);
  out.special = fraction_field_homology_ranks(special);
  for (int i = k.lo(); i <= k.hi(); ++i) {
    const auto g = out.generic[i], s = out.special[i];
    out.verdict[i] = g == s ? FibreVerdict::Equal : g < s ? FibreVerdict::Strict : FibreVerdict::Violated;
  }
  return out;
}

SemicontinuityResult semicontinuity_torus(const AinfModel& model, const GradingBox& box) {
  const FpPolyRing r{model.prime()};
  SemicontinuityResult out;
  for (int i = 0; i <= box.dim(); ++i) out.generic[i] = out.special[i] = 0;
  const auto d = static_cast<std::size_t>(box.dim());
  const auto b = static_cast<std::int64_t>(box.bound());
  std::vector<std::int64_t> a(d, -b);
  for (bool more = true; more;) {
    std::vector<FpPoly> g;
    for (std::int64_t x : a) g.push_back(FpPoly::unit_normalized(q_analog(x, model), model.prime()).taylor_shift(1));
    const auto fibres = semicontinuity_demo(koszul(r, g));
    for (const auto& [degree, v] : fibres.generic) out.generic[degree] += v;
    for (const auto& [degree, v] : fibres.special) out.special[degree] += v;
    more = false;
    for (std::size_t j = d; j-- > 0;) {
      if (++a[j] <= b) {
        more = true;
        break;
      }
      a[j] = -b;
    }
  }
  for (const auto& [degree, g] : out.generic) {
    const auto s = out.special[degree];
    out.verdict[degree] = g == s ? FibreVerdict::Equal : g < s ? FibreVerdict::Strict : FibreVerdict::Violated;
  }
  return out;
}

RandomFpComplex random_fp_complex(std::mt19937_64& rng, std::int64_t p, int length, std::size_t max_rank) {
  if (length < 1) throw std::invalid_argument("random_fp_complex: length must be positive");
  const FpPolyRing r{p};
  std::uniform_int_distribution<std::int64_t> coeff(0, p - 1);
  auto random_poly = [&](int max_degree, bool nonzero) {
    for (;;) {
      std::vector<std::int64_t> c(static_cast<std::size_t>(max_degree) + 1);
      for (auto& x : c) x = coeff(rng);
      FpPoly f(p, c);
      if (!nonzero || !f.is_zero()) return f;
    }
  };
  DiagonalComplex<FpPolyRing> diag{r, {}};
  std::vector<std::size_t> rank(static_cast<std::size_t>(length), 0);
  std::uniform_int_distribution<int> pieces(0, 2);
  for (int s = 0; s < length; ++s) {
    const auto su = static_cast<std::size_t>(s);
    for (int t = pieces(rng); t > 0 && rank[su] < max_rank; --t) {
      diag.add_free(s);
      ++rank[su];
    }
    if (s + 1 == length) continue;
    for (int t = pieces(rng); t > 0 && rank[su] < max_rank && rank[su + 1] < max_rank; --t) {
      FpPoly g = random_poly(2, true);
      // Bias toward g(0) = 0, where the fibres jump.
      if (rng() % 2) g = g * FpPoly::monomial(p, 1);
      diag.add_two_term(s, g);
      ++rank[su];
      ++rank[su + 1];
    }
  }
  if (diag.summands.empty()) diag.add_free(0);
  const auto base = diag.to_complex();
  // Random unimodular change of basis per degree: P = E_k ... E_1.
  std::map<int, std::pair<RingMatrix<FpPolyRing>, RingMatrix<FpPolyRing>>> change;
  for (int i = base.lo(); i <= base.hi(); ++i) {
    const std::size_t n = base.rank(i);
    auto pm = identity_matrix(r, n), inv = identity_matrix(r, n);
    if (n >= 2) {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (int step = 0; step < 3; ++step) {
        const std::size_t x = pick(rng);
        std::size_t y = pick(rng);
        if (y == x) y = (x + 1) % n;
        const FpPoly c = random_poly(1, false);
        auto e = identity_matrix(r, n), e_inv = identity_matrix(r, n);
        e.at(x, y) = c;
        e_inv.at(x, y) = -c;
        pm = multiply(r, e, pm);
        inv = multiply(r, inv, e_inv);
      }
    }
    change.emplace(i, std::make_pair(pm, inv));
  }
  std::vector<RingMatrix<FpPolyRing>> diffs;
  for (int i = base.lo(); i < base.hi(); ++i)
    diffs.push_back(multiply(r, change.at(i + 1).first, multiply(r, base.differential(i), change.at(i).second)));
  return {ChainComplex<FpPolyRing>(r, base.lo(), base.ranks(), std::move(diffs)), diag};
}

Report run_torus_pipeline(const AinfModel& model, const GradingBox& box) {
  Report report("torus p=" + std::to_string(box.prime()) + " n=" + std::to_string(box.depth()) +
                " d=" + std::to_string(box.dim()) + " B=" + std::to_string(box.bound()));
  const auto tilde = tilde_omega_torus(box);
  report.merge(check_tilde_omega_ranks(tilde), "tilde: ");
  report.merge(check_twist_additivity(tilde), "tilde: ");

  const auto ainf = ainf_omega_torus(model, box);
  {
    std::size_t bad = 0, integral = 0;
    std::string first;
    for (std::size_t i = 0; i < box.size(); ++i) {
      const bool is_int = box.is_integral(i);
      integral += is_int;
      const auto& cell = ainf.result.cell(i);
      bool ok = cell.present == is_int;
      if (ok && is_int) {
        const auto& s = ainf.survivors.at(ainf.result.cell_class[i]).summand;
        const auto a = box.numerators(i);
        for (std::size_t j = 0; j < a.size(); ++j) ok = ok && s.elements[j] == q_analog(a[j] / box.denominator(), model);
      }
      if (!ok) {
        ++bad;
        if (first.empty()) first = grading_to_string(box.grading(i));
      }
    }
    report.add("ainf: integral gradings give K(A; [a_j]_q), the rest are killed (" + std::to_string(integral) +
                   " integral)",
               bad == 0, first);
  }
  report.merge(check_twist_additivity(ainf.result), "ainf: ");
  report.merge(check_leta_mu_composite(ainf, ainf_omega_torus_mu(model, box)), "ainf: ");
  report.merge(specialize_hodge_tate(ainf).report, "ht: ");
  const auto dr = specialize_de_rham(ainf);
  report.merge(dr.report, "dr: ");
  const auto etale = etale_rank_torus(ainf);
  report.merge(etale.report, "etale: ");
  const auto at_zero = free_ranks(dr.result.cell(box.zero_index()).homology);
  report.add("etale: ranks equal the de Rham dimensions at grading 0", at_zero == etale.ranks,
             table_string(at_zero) + " vs " + table_string(etale.ranks));
  const auto fibres = semicontinuity_torus(model, box);
  report.add("semicontinuity: generic <= special in every degree", fibres.holds());
  const bool expect_equal = box.bound() < box.prime();
  report.add(std::string("semicontinuity: fibres ") + (expect_equal ? "equal" : "jump") + " (B " +
                 (expect_equal ? "<" : ">=") + " p)",
             fibres.all_equal() == expect_equal,
             "generic " + table_string(fibres.generic) + ", special " + table_string(fibres.special));
  return report;
}

}  // namespace aomega
