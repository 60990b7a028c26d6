#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aomega/complex.hpp"
#include "aomega/decalage.hpp"
#include "aomega/model.hpp"
#include "aomega/report.hpp"
#include "aomega/rings.hpp"

namespace aomega {

/// Gradings a in (p^{-n} Z intersected with [-B, B])^d in lexicographic order
/// (first coordinate most significant). A coordinate is stored by its
/// numerator k = p^n a or by its value index k + B p^n in [0, side).
class GradingBox {
 public:
  GradingBox(std::int64_t p, int dim, int depth, int bound);

  std::int64_t prime() const { return p_; }
  int dim() const { return dim_; }
  int depth() const { return depth_; }
  int bound() const { return bound_; }
  /// p^depth.
  std::int64_t denominator() const { return den_; }
  /// Number of coordinate values, 2 B p^n + 1.
  std::size_t side() const { return side_; }
  std::size_t size() const { return size_; }

  std::int64_t numerator_of_value(std::size_t v) const { return static_cast<std::int64_t>(v) - bound_ * den_; }
  std::vector<std::size_t> values(std::size_t index) const;
  std::vector<std::int64_t> numerators(std::size_t index) const;
  std::vector<RationalExponent> grading(std::size_t index) const;
  bool is_integral(std::size_t index) const;
  std::optional<std::size_t> index_of(const std::vector<RationalExponent>& a) const;
  std::size_t zero_index() const;

  friend bool operator==(const GradingBox&, const GradingBox&) = default;

 private:
  std::int64_t p_;
  int dim_, depth_, bound_;
  std::int64_t den_;
  std::size_t side_, size_;
};

std::string grading_to_string(const std::vector<RationalExponent>& a);

/// One Koszul summand per grading of the box, with weights [eps^{a_j}] - 1.
/// Summands are assembled on demand from the per-coordinate weights.
template <class Ring>
struct GradedKoszulSum {
  Ring ring;
  GradingBox box;
  /// Weight of a coordinate, by value index.
  std::vector<typename Ring::Element> weights;
  /// Grading recorded on the summands is a / p^twist.
  int frobenius_twist = 0;

  KoszulSummand<Ring> summand(std::size_t index) const {
    std::vector<typename Ring::Element> g;
    std::vector<RationalExponent> grading;
    for (std::size_t v : box.values(index)) {
      g.push_back(weights[v]);
      grading.emplace_back(box.prime(), box.numerator_of_value(v), box.depth() + frobenius_twist);
    }
    return koszul_summand(ring, std::move(g), std::move(grading));
  }
};

GradedKoszulSum<LaurentRing> build_torus_cohomology(const AinfModel& model, const GradingBox& box);
/// The O_C model: weights zeta_{p^{n+t}}^{k} - 1 in Z[zeta_{p^{n+t}}], which is
/// theta([eps^{a/p^t}] - 1). t = 1 is the Frobenius twist used for Hodge-Tate.
GradedKoszulSum<CyclotomicRing> build_torus_cohomology_oc(const GradingBox& box, int frobenius_twist = 0);

/// Torsion generators are canonical strings: up to units of the ring.
using TorusHomology = HomologyPresentation<std::string>;
/// "H0=R^1, H1=R/(u - 1)", or "0".
std::string to_string(const TorusHomology& h);
/// Homology of a Koszul summand over A through its diagonal form; throws
/// std::logic_error when no element divides the others.
TorusHomology summand_homology(const KoszulSummand<LaurentRing>& k);

struct TorusCell {
  /// False when the summand was killed (L eta gave Zero) or is absent.
  bool present = false;
  TorusHomology homology;
  /// L eta applications recorded on the summand.
  int leta = 0;
  /// Breuil-Kisin twist tag {-i} on each nonzero H^i.
  std::map<int, int> twist;
  std::string note;

  friend bool operator==(const TorusCell&, const TorusCell&) = default;
};

/// Cells are shared: classes holds the distinct outcomes and cell_class maps
/// each box position to one of them. Class 0 is the killed cell.
struct TorusCohomologyResult {
  std::string stage;
  std::string ring;
  GradingBox box{2, 0, 1, 0};
  std::vector<TorusCell> classes;
  std::vector<std::uint32_t> cell_class;
  std::vector<std::string> problems;

  const TorusCell& cell(std::size_t index) const { return classes[cell_class[index]]; }
  /// Free ranks summed over all gradings, per degree.
  std::map<int, std::size_t> free_rank_table() const;
  /// Number of gradings whose cell has nonzero homology.
  std::size_t nonzero_cells() const;
};

/// L eta_{zeta_p - 1} on the O_C model, per grading.
TorusCohomologyResult tilde_omega_torus(const GradingBox& box, int frobenius_twist = 0);
/// binomial(d, i) free in degree i at integral gradings, zero elsewhere.
Report check_tilde_omega_ranks(const TorusCohomologyResult& tilde);
Report check_twist_additivity(const TorusCohomologyResult& r);

struct AinfSurvivor {
  KoszulSummand<LaurentRing> before_xi;  // after L eta_{phi^{-1}(mu)}
  KoszulSummand<LaurentRing> summand;    // after L eta_xi as well
};

struct AinfOmegaTorus {
  AinfModel model;
  TorusCohomologyResult result;
  std::map<std::uint32_t, AinfSurvivor> survivors;
};

/// L eta_{phi^{-1}(mu)} followed by L eta_xi; integral gradings end at
/// K(A; [a_1]_q, ..., [a_d]_q).
AinfOmegaTorus ainf_omega_torus(const AinfModel& model, const GradingBox& box);
/// L eta_mu in a single step.
AinfOmegaTorus ainf_omega_torus_mu(const AinfModel& model, const GradingBox& box);
/// Both evaluation orders agree on every grading, summand and homology.
Report check_leta_mu_composite(const AinfOmegaTorus& two_step, const AinfOmegaTorus& one_step);

struct SpecializationResult {
  TorusCohomologyResult result;
  Report report;
};

/// AOmega / xi_tilde per grading against tilde_omega at a/p.
SpecializationResult specialize_hodge_tate(const AinfOmegaTorus& ainf);

/// The de Rham complex of t^a over Z in the basis t^a dlog t_S:
/// d(t^a dlog t_S) = sum_j a_j t^a dlog t_j ^ dlog t_S.
ChainComplex<IntegerRing> classical_de_rham_piece(const std::vector<std::int64_t>& a);

struct DeRhamResult {
  TorusCohomologyResult result;
  /// Bockstein beta_xi complex per surviving class, entries in Z.
  std::map<std::uint32_t, ChainComplex<IntegerRing>> pieces;
  Report report;
};
DeRhamResult specialize_de_rham(const AinfOmegaTorus& ainf);

struct EtaleRanks {
  /// Ranks over Q(u), summed over gradings.
  std::map<int, std::size_t> ranks;
  Report report;
};
/// Ranks of the Koszul summands over the fraction field Q(u).
EtaleRanks etale_rank_torus(const AinfOmegaTorus& ainf);

enum class FibreVerdict { Equal, Strict, Violated };
std::string to_string(FibreVerdict v);

struct SemicontinuityResult {
  std::map<int, std::size_t> generic;  // dim over F_p(u)
  std::map<int, std::size_t> special;  // dim over F_p after u -> 0
  std::map<int, FibreVerdict> verdict;

  bool holds() const;
  bool all_equal() const;
  bool some_strict() const;
};

SemicontinuityResult semicontinuity_demo(const ChainComplex<FpPolyRing>& k);
/// AOmega / p on the integral gradings of the box, written over F_p[w] with
/// w = u - 1 (each weight rescaled by a unit of F_p[u^{+-1}] first), so the
/// special fibre is q = 1. Fibre dimensions are summed over gradings.
SemicontinuityResult semicontinuity_torus(const AinfModel& model, const GradingBox& box);

struct RandomFpComplex {
  ChainComplex<FpPolyRing> complex;
  /// The diagonal complex it is isomorphic to.
  DiagonalComplex<FpPolyRing> diagonal;
};
/// A random diagonal complex over F_p[u] conjugated by random unimodular
/// matrices in every degree.
RandomFpComplex random_fp_complex(std::mt19937_64& rng, std::int64_t p, int length = 3, std::size_t max_rank = 3);

/// Every stage on one box plus the cross-checks between them.
Report run_torus_pipeline(const AinfModel& model, const GradingBox& box);

}  // namespace aomega
