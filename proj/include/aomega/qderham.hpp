#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aomega/complex.hpp"
#include "aomega/model.hpp"
#include "aomega/report.hpp"
#include "aomega/torus.hpp"

namespace aomega {

/// Finite sum of c_m t^m, m in Z^d, c_m in the A_inf model. Zero
/// coefficients are never stored.
class QLaurentFunction {
 public:
  using Exponent = std::vector<std::int64_t>;

  QLaurentFunction(const AinfModel& model, int dim) : model_(model), dim_(dim) {}
  static QLaurentFunction monomial(const AinfModel& model, const Exponent& m, const Laurent& c);

  const AinfModel& model() const { return model_; }
  int dim() const { return dim_; }
  const std::map<Exponent, Laurent>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Laurent coefficient(const Exponent& m) const;

  void add_term(const Exponent& m, const Laurent& c);
  /// f(t_1, .., q t_j, .., t_d).
  QLaurentFunction q_shift(int j) const;
  /// Multiplication by t^e.
  QLaurentFunction shift(const Exponent& e) const;

  friend QLaurentFunction operator+(const QLaurentFunction& a, const QLaurentFunction& b);
  friend QLaurentFunction operator-(const QLaurentFunction& a, const QLaurentFunction& b);
  friend QLaurentFunction operator*(const QLaurentFunction& a, const QLaurentFunction& b);
  friend bool operator==(const QLaurentFunction& a, const QLaurentFunction& b) {
    return a.model_ == b.model_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  AinfModel model_;
  int dim_;
  std::map<Exponent, Laurent> terms_;
};

/// (f(q t_j) - f(t)) / (q t_j - t_j): the coefficient of dt_j.
QLaurentFunction nabla_q(const QLaurentFunction& f, int j);

/// The piece of the q-de Rham complex on t^m, in the basis t^m dlog t_S:
/// d(t^m dlog t_S) = sum_j t_j nabla_{q,j}(t^m) dlog t_j ^ dlog t_S.
ChainComplex<LaurentRing> q_de_rham_piece(const AinfModel& model, const std::vector<std::int64_t>& m);

/// Block-diagonal: one piece per monomial m in [-B, B]^d.
struct QDeRhamComplex {
  AinfModel model;
  int dim = 0;
  int bound = 0;
  std::map<std::vector<std::int64_t>, ChainComplex<LaurentRing>> pieces;
};
QDeRhamComplex q_de_rham_complex(const AinfModel& model, int dim, int bound);

/// u -> 1 entrywise.
ChainComplex<IntegerRing> q_to_one(const ChainComplex<LaurentRing>& k);

/// Homology of one piece over A, torsion up to units of A_inf.
TorusHomology q_de_rham_homology(const ChainComplex<LaurentRing>& piece);

/// Pieces against the integral summands of ainf_omega_torus, matrix by matrix.
Report compare_with_torus_pipeline(const AinfModel& model, int dim, int bound);
/// q_to_one of every piece against the classical de Rham complex.
Report check_q_to_one(const AinfModel& model, int dim, int bound);
/// nabla_q(f g) = f(q t) nabla_q(g) + nabla_q(f) g on random pairs.
Report check_q_leibniz(const AinfModel& model, int dim, int samples, std::uint64_t seed);
/// nabla_{q,i} nabla_{q,j} = nabla_{q,j} nabla_{q,i} on random functions.
Report check_nabla_commute(const AinfModel& model, int dim, int samples, std::uint64_t seed);

}  // namespace aomega
