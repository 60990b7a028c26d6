#pragma once

#include <optional>
#include <vector>

#include "aomega/complex.hpp"
#include "aomega/integer.hpp"
#include "aomega/matrix.hpp"

namespace aomega {

// Integer lattices are given by matrices whose columns generate them.

using IntMatrix = Matrix<Integer>;

IntMatrix int_matrix(std::size_t rows, std::size_t cols);
IntMatrix int_matrix(const std::vector<std::vector<long>>& rows);
IntMatrix int_identity(std::size_t n, const Integer& diagonal = 1);
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix column(const IntMatrix& a, std::size_t j);

/// A * U = H with U unimodular and H in column echelon form: the first
/// `rank` columns are nonzero with strictly increasing pivot rows and
/// positive pivots, the rest are zero.
struct ColumnEchelon {
  IntMatrix h, u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};
ColumnEchelon column_echelon(const IntMatrix& a);

std::size_t int_rank(const IntMatrix& a);
/// Basis of {x : A x = 0}, one vector per column.
IntMatrix kernel_basis(const IntMatrix& a);
/// Basis (independent columns) of the lattice generated by the columns of a.
IntMatrix image_basis(const IntMatrix& a);
/// Basis of {x : A x lies in the lattice generated by the columns of l}.
IntMatrix preimage(const IntMatrix& a, const IntMatrix& l);
IntMatrix intersection(const IntMatrix& a, const IntMatrix& b);

/// Some x with A x = y, if one exists.
std::optional<std::vector<Integer>> solve_any(const IntMatrix& a, const std::vector<Integer>& y);
/// Coordinates of every column of y in the independent columns of basis.
std::optional<IntMatrix> solve_columns(const IntMatrix& basis, const IntMatrix& y);
bool lattice_contains(const IntMatrix& generators, const IntMatrix& vectors);

/// Nonzero Smith normal form entries: positive, each dividing the next.
std::vector<Integer> elementary_divisors(const IntMatrix& a);
/// Canonical invariant factors (> 1) of a direct sum of cyclic groups Z/n_i.
std::vector<Integer> invariant_factors(const std::vector<Integer>& orders);

/// span(big) / span(small), assuming span(small) lies in span(big).
HomologyGroup<Integer> quotient_group(const IntMatrix& big, const IntMatrix& small);

HomologyPresentation<Integer> homology_snf(const ChainComplex<IntegerRing>& k);
/// Homology of K (x) Z/f for a complex of free Z-modules, as abelian groups.
HomologyPresentation<Integer> homology_mod(const ChainComplex<IntegerRing>& k, const Integer& f);
/// Homology of a complex over Z/n, as abelian groups.
HomologyPresentation<Integer> homology_mod(const ChainComplex<ModRing>& k);
/// Rewrites every torsion list into canonical invariant factors.
HomologyPresentation<Integer> canonical(HomologyPresentation<Integer> h);

/// "Z^2 + Z/2 + Z/12", or "0".
std::string group_to_string(const HomologyGroup<Integer>& g);
std::string presentation_to_string(const HomologyPresentation<Integer>& h);

}  // namespace aomega
