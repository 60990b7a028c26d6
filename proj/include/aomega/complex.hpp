#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "aomega/exponent.hpp"
#include "aomega/matrix.hpp"
#include "aomega/rings.hpp"

namespace aomega {

/// Bounded cochain complex of finite free modules in degrees [lo, hi].
/// diffs[k] is d^{lo+k}: rank(lo+k) -> rank(lo+k+1), a rank(lo+k+1) x rank(lo+k) matrix.
template <class Ring>
class ChainComplex {
 public:
  using Element = typename Ring::Element;
  using Mat = RingMatrix<Ring>;

  ChainComplex() = default;
  ChainComplex(Ring ring, int lo, std::vector<std::size_t> ranks, std::vector<Mat> diffs)
      : ring_(std::move(ring)), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
    const std::size_t expected = ranks_.empty() ? 0 : ranks_.size() - 1;
    if (diffs_.size() != expected)
      throw std::invalid_argument("ChainComplex: expected " + std::to_string(expected) + " differentials, got " +
                                  std::to_string(diffs_.size()));
    for (std::size_t k = 0; k < diffs_.size(); ++k)
      if (diffs_[k].rows() != ranks_[k + 1] || diffs_[k].cols() != ranks_[k])
        throw std::invalid_argument("ChainComplex: d^" + std::to_string(lo_ + static_cast<int>(k)) +
                                    " has shape " + std::to_string(diffs_[k].rows()) + "x" +
                                    std::to_string(diffs_[k].cols()));
    for (std::size_t k = 0; k + 1 < diffs_.size(); ++k)
      if (!is_zero_matrix(ring_, multiply(ring_, diffs_[k + 1], diffs_[k])))
        throw std::invalid_argument("ChainComplex: d^" + std::to_string(lo_ + static_cast<int>(k) + 1) + " o d^" +
                                    std::to_string(lo_ + static_cast<int>(k)) + " != 0");
  }

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  bool empty() const { return ranks_.empty(); }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const std::vector<Mat>& diffs() const { return diffs_; }

  std::size_t rank(int degree) const {
    if (degree < lo_ || degree > hi()) return 0;
    return ranks_[static_cast<std::size_t>(degree - lo_)];
  }

  /// d^degree, a zero matrix of the right shape outside [lo, hi).
  Mat differential(int degree) const {
    if (degree >= lo_ && degree < hi()) return diffs_[static_cast<std::size_t>(degree - lo_)];
    return zero_matrix(ring_, rank(degree + 1), rank(degree));
  }

 private:
  Ring ring_{};
  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<Mat> diffs_;
};

/// Builds a complex on [lo, hi] from rank and differential callbacks.
template <class Ring, class RankFn, class DiffFn>
ChainComplex<Ring> build_complex(const Ring& ring, int lo, int hi, RankFn rank, DiffFn diff) {
  std::vector<std::size_t> ranks;
  std::vector<RingMatrix<Ring>> diffs;
  for (int i = lo; i <= hi; ++i) ranks.push_back(rank(i));
  for (int i = lo; i < hi; ++i) diffs.push_back(diff(i));
  return ChainComplex<Ring>(ring, lo, std::move(ranks), std::move(diffs));
}

/// Chain map with components f^i: K^i -> L^i (rank_L(i) x rank_K(i)).
template <class Ring>
struct ChainMap {
  ChainComplex<Ring> source, target;
  std::map<int, RingMatrix<Ring>> components;

  RingMatrix<Ring> at(int degree) const {
    auto it = components.find(degree);
    if (it != components.end()) return it->second;
    return zero_matrix(source.ring(), target.rank(degree), source.rank(degree));
  }
};

template <class Ring>
bool is_chain_map(const ChainMap<Ring>& f) {
  const Ring& r = f.source.ring();
  const int lo = std::min(f.source.lo(), f.target.lo()) - 1;
  const int hi = std::max(f.source.hi(), f.target.hi()) + 1;
  for (int i = lo; i <= hi; ++i) {
    const auto m = f.at(i);
    if (m.rows() != f.target.rank(i) || m.cols() != f.source.rank(i)) return false;
    if (!matrices_equal(r, multiply(r, f.target.differential(i), m), multiply(r, f.at(i + 1), f.source.differential(i))))
      return false;
  }
  return true;
}

/// Mapping cone: C^i = K^{i+1} + L^i, d(a, b) = (-d a, f a + d b).
template <class Ring>
ChainComplex<Ring> cone(const ChainMap<Ring>& f) {
  const auto& k = f.source;
  const auto& l = f.target;
  const Ring& r = k.ring();
  int lo = std::min(k.lo() - 1, l.lo()), hi = std::max(k.hi() - 1, l.hi());
  if (k.empty()) lo = l.lo(), hi = l.hi();
  if (l.empty()) lo = k.lo() - 1, hi = k.hi() - 1;
  return build_complex(
      r, lo, hi, [&](int i) { return k.rank(i + 1) + l.rank(i); },
      [&](int i) {
        return block(r, negate(r, k.differential(i + 1)), zero_matrix(r, k.rank(i + 2), l.rank(i)), f.at(i + 1),
                     l.differential(i));
      });
}

/// Multiplication by s as an endomorphism of K.
template <class Ring>
ChainMap<Ring> multiplication_map(const ChainComplex<Ring>& k, const typename Ring::Element& s) {
  ChainMap<Ring> m{k, k, {}};
  for (int i = k.lo(); i <= k.hi(); ++i) m.components[i] = scale(k.ring(), s, identity_matrix(k.ring(), k.rank(i)));
  return m;
}

/// Tensor product with d(a (x) b) = d a (x) b + (-1)^{|a|} a (x) d b. The basis of
/// degree n lists the blocks K^i (x) L^{n-i} by increasing i, each in Kronecker order.
template <class Ring>
ChainComplex<Ring> tensor(const ChainComplex<Ring>& k, const ChainComplex<Ring>& l) {
  const Ring& r = k.ring();
  const int lo = k.lo() + l.lo(), hi = k.hi() + l.hi();
  auto offset = [&](int n, int i) {
    std::size_t off = 0;
    for (int j = k.lo(); j < i; ++j) off += k.rank(j) * l.rank(n - j);
    return off;
  };
  auto rank = [&](int n) { return offset(n, k.hi() + 1); };
  return build_complex(r, lo, hi, rank, [&](int n) {
    auto d = zero_matrix(r, rank(n + 1), rank(n));
    auto put = [&d](const RingMatrix<Ring>& x, std::size_t r0, std::size_t c0) {
      for (std::size_t a = 0; a < x.rows(); ++a)
        for (std::size_t b = 0; b < x.cols(); ++b) d.at(r0 + a, c0 + b) = x.at(a, b);
    };
    for (int i = k.lo(); i <= k.hi(); ++i) {
      const int j = n - i;
      if (l.rank(j) == 0 || k.rank(i) == 0) continue;
      const auto id_l = identity_matrix(r, l.rank(j));
      const auto id_k = identity_matrix(r, k.rank(i));
      if (k.rank(i + 1) > 0) put(kronecker(r, k.differential(i), id_l), offset(n + 1, i + 1), offset(n, i));
      if (l.rank(j + 1) > 0) {
        auto dl = kronecker(r, id_k, l.differential(j));
        if (i % 2 != 0) dl = negate(r, dl);
        put(dl, offset(n + 1, i), offset(n, i));
      }
    }
    return d;
  });
}

/// Subsets of {0..d-1} of size k, lexicographic on sorted tuples.
std::vector<std::vector<int>> koszul_subsets(int d, int k);
std::size_t binomial(int n, int k);

/// Koszul complex K(g_1..g_d) in degrees 0..d, basis e_S with S in
/// koszul_subsets order, d(e_S) = sum_{j not in S} (-1)^{#{s in S: s<j}} g_j e_{S+j}.
template <class Ring>
ChainComplex<Ring> koszul(const Ring& ring, const std::vector<typename Ring::Element>& g) {
  const int d = static_cast<int>(g.size());
  return build_complex(
      ring, 0, d, [&](int k) { return binomial(d, k); },
      [&](int k) {
        const auto src = koszul_subsets(d, k), dst = koszul_subsets(d, k + 1);
        auto m = zero_matrix(ring, dst.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
          for (int j = 0; j < d; ++j) {
            if (std::find(src[c].begin(), src[c].end(), j) != src[c].end()) continue;
            int before = 0;
            for (int s : src[c]) before += s < j;
            auto target = src[c];
            target.insert(std::upper_bound(target.begin(), target.end(), j), j);
            const auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), target) - dst.begin());
            m.at(row, c) = before % 2 ? ring.neg(g[static_cast<std::size_t>(j)]) : g[static_cast<std::size_t>(j)];
          }
        }
        return m;
      });
}

/// Koszul complex with its exponent grading and Breuil-Kisin twist tag.
template <class Ring>
struct KoszulSummand {
  Ring ring;
  std::vector<typename Ring::Element> elements;
  std::vector<RationalExponent> grading;
  int twist = 0;

  ChainComplex<Ring> complex() const { return koszul(ring, elements); }
};

template <class Ring>
KoszulSummand<Ring> koszul_summand(const Ring& ring, std::vector<typename Ring::Element> g,
                                   std::vector<RationalExponent> grading, int twist = 0) {
  if (g.size() != grading.size())
    throw std::invalid_argument("koszul_summand: " + std::to_string(g.size()) + " elements but " +
                                std::to_string(grading.size()) + " grading entries");
  return {ring, std::move(g), std::move(grading), twist};
}

/// One homology group: free rank plus torsion quotients R/(g). Over Z the
/// torsion entries are elementary divisors > 1 in divisibility order.
template <class E>
struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<E> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Homology per degree; degrees absent from the map are zero.
template <class E>
struct HomologyPresentation {
  std::map<int, HomologyGroup<E>> groups;

  HomologyGroup<E> at(int degree) const {
    auto it = groups.find(degree);
    return it == groups.end() ? HomologyGroup<E>{} : it->second;
  }
  bool is_zero() const {
    return std::all_of(groups.begin(), groups.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }
  void prune() { std::erase_if(groups, [](const auto& kv) { return kv.second.is_zero(); }); }
  friend bool operator==(HomologyPresentation a, HomologyPresentation b) {
    a.prune();
    b.prune();
    return a.groups == b.groups;
  }
};

template <class Ring>
struct DiagonalSummand {
  enum class Kind { Rank1Free, TwoTerm };
  int shift = 0;
  Kind kind = Kind::Rank1Free;
  typename Ring::Element g{};
};

/// Finite direct sum of shifted rank-one free pieces and two-term complexes
/// R --g--> R.
template <class Ring>
struct DiagonalComplex {
  Ring ring;
  std::vector<DiagonalSummand<Ring>> summands;

  void add_free(int shift, std::size_t multiplicity = 1) {
    for (std::size_t i = 0; i < multiplicity; ++i) summands.push_back({shift, DiagonalSummand<Ring>::Kind::Rank1Free, ring.zero()});
  }
  void add_two_term(int shift, const typename Ring::Element& g, std::size_t multiplicity = 1) {
    if (ring.is_zero(g)) throw std::invalid_argument("DiagonalComplex: TwoTerm needs a nonzero element");
    for (std::size_t i = 0; i < multiplicity; ++i) summands.push_back({shift, DiagonalSummand<Ring>::Kind::TwoTerm, g});
  }

  /// The direct sum written out as one complex, summands in list order.
  ChainComplex<Ring> to_complex() const {
    if (summands.empty()) return ChainComplex<Ring>(ring, 0, {}, {});
    int lo = summands[0].shift, hi = lo;
    for (const auto& s : summands) {
      lo = std::min(lo, s.shift);
      hi = std::max(hi, s.shift + (s.kind == DiagonalSummand<Ring>::Kind::TwoTerm ? 1 : 0));
    }
    // Position of summand index t inside degree i.
    auto index_in = [&](int i, std::size_t t) {
      std::size_t pos = 0;
      for (std::size_t u = 0; u < t; ++u) pos += occupies(summands[u], i);
      return pos;
    };
    return build_complex(
        ring, lo, hi,
        [&](int i) {
          std::size_t n = 0;
          for (const auto& s : summands) n += occupies(s, i);
          return n;
        },
        [&](int i) {
          std::size_t rows = 0, cols = 0;
          for (const auto& s : summands) rows += occupies(s, i + 1), cols += occupies(s, i);
          auto m = zero_matrix(ring, rows, cols);
          for (std::size_t t = 0; t < summands.size(); ++t)
            if (summands[t].kind == DiagonalSummand<Ring>::Kind::TwoTerm && summands[t].shift == i)
              m.at(index_in(i + 1, t), index_in(i, t)) = summands[t].g;
          return m;
        });
  }

 private:
  static std::size_t occupies(const DiagonalSummand<Ring>& s, int i) {
    if (s.kind == DiagonalSummand<Ring>::Kind::Rank1Free) return s.shift == i;
    return s.shift == i || s.shift + 1 == i;
  }
};

/// Homology of a diagonal complex over a domain: Rank1Free at s gives R in
/// H^s, TwoTerm(g) at s gives R/(g) in H^{s+1} (nothing when g is a unit).
template <class Ring>
HomologyPresentation<typename Ring::Element> homology_diagonal(const DiagonalComplex<Ring>& d) {
  HomologyPresentation<typename Ring::Element> h;
  for (const auto& s : d.summands) {
    if (s.kind == DiagonalSummand<Ring>::Kind::Rank1Free) {
      ++h.groups[s.shift].free_rank;
    } else if (!d.ring.is_unit(s.g)) {
      h.groups[s.shift + 1].torsion.push_back(s.g);
    }
  }
  h.prune();
  return h;
}

struct NotStructured {
  std::string reason;
};

template <class Ring>
using DiagonalOrNot = std::variant<DiagonalComplex<Ring>, NotStructured>;

/// Rewrites K(g_1..g_d) as a diagonal complex when some g_i divides all the
/// others (then K = K(g_i) (x) exterior algebra on d-1 zero generators), or
/// when every g_i is zero.
template <class Ring>
DiagonalOrNot<Ring> koszul_to_diagonal(const KoszulSummand<Ring>& k) {
  const Ring& r = k.ring;
  const int d = static_cast<int>(k.elements.size());
  DiagonalComplex<Ring> out{r, {}};
  if (std::all_of(k.elements.begin(), k.elements.end(), [&r](const auto& g) { return r.is_zero(g); })) {
    for (int s = 0; s <= d; ++s) out.add_free(s, binomial(d, s));
    return out;
  }
  for (const auto& g : k.elements) {
    if (r.is_zero(g)) continue;
    const bool divides_all =
        std::all_of(k.elements.begin(), k.elements.end(), [&](const auto& h) { return r.divides(g, h); });
    if (!divides_all) continue;
    for (int s = 0; s < d; ++s) out.add_two_term(s, g, binomial(d - 1, s));
    return out;
  }
  return NotStructured{"no element divides all the others"};
}

/// dim H^i over the fraction field of the base domain, for every degree.
template <class Ring>
std::map<int, std::size_t> fraction_field_homology_ranks(const ChainComplex<Ring>& k) {
  std::map<int, std::size_t> out;
  for (int i = k.lo(); i <= k.hi(); ++i)
    out[i] = k.rank(i) - fraction_field_rank(k.ring(), k.differential(i)) -
             fraction_field_rank(k.ring(), k.differential(i - 1));
  return out;
}

/// Degreewise reduction of a complex over Z into Z/n.
ChainComplex<ModRing> mod_f(const ChainComplex<IntegerRing>& k, const Integer& n);
/// Reduction of a complex over the A_inf model modulo xi, landing in Z[zeta_{p^n}].
ChainComplex<CyclotomicRing> mod_xi(const ChainComplex<LaurentRing>& k);

}  // namespace aomega
