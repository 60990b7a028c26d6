#include "aomega/lattice.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace aomega {

namespace {

void column_op(IntMatrix& m, std::size_t i, std::size_t j, const Integer& s, const Integer& t, const Integer& x,
               const Integer& y) {
  // (col_i, col_j) <- (s col_i + t col_j, x col_i + y col_j)
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const Integer a = m.at(r, i), b = m.at(r, j);
    m.at(r, i) = s * a + t * b;
    m.at(r, j) = x * a + y * b;
  }
}

void add_column_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& c) {
  for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, dst) += c * m.at(r, src);
}

void negate_column(IntMatrix& m, std::size_t j) {
  for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, j) = -m.at(r, j);
}

IntMatrix first_columns(const IntMatrix& m, std::size_t count) {
  IntMatrix out = int_matrix(m.rows(), count);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < count; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

IntMatrix last_columns(const IntMatrix& m, std::size_t from) {
  IntMatrix out = int_matrix(m.rows(), m.cols() - from);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = from; j < m.cols(); ++j) out.at(i, j - from) = m.at(i, j);
  return out;
}

IntMatrix top_rows(const IntMatrix& m, std::size_t count) {
  IntMatrix out = int_matrix(count, m.cols());
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j);
  return out;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) { return multiply(IntegerRing{}, a, b); }

// Forward substitution against the echelon form; nullopt if y is outside the span.
std::optional<std::vector<Integer>> solve_echelon(const ColumnEchelon& e, const std::vector<Integer>& y) {
  std::vector<Integer> z(e.rank);
  for (std::size_t k = 0; k < e.rank; ++k) {
    const std::size_t r = e.pivot_rows[k];
    Integer rest = y[r];
    for (std::size_t l = 0; l < k; ++l) rest -= e.h.at(r, l) * z[l];
    if (rest % e.h.at(r, k) != 0) return std::nullopt;
    z[k] = rest / e.h.at(r, k);
  }
  for (std::size_t r = 0; r < e.h.rows(); ++r) {
    Integer acc = 0;
    for (std::size_t k = 0; k < e.rank; ++k) acc += e.h.at(r, k) * z[k];
    if (acc != y[r]) return std::nullopt;
  }
  return z;
}

}  // namespace

IntMatrix int_matrix(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols, Integer(0)); }

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) { return from_ints(IntegerRing{}, rows); }

IntMatrix int_identity(std::size_t n, const Integer& diagonal) {
  IntMatrix m = int_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = diagonal;
  return m;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row count mismatch");
  IntMatrix m = int_matrix(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

IntMatrix column(const IntMatrix& a, std::size_t j) {
  IntMatrix c = int_matrix(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) c.at(i, 0) = a.at(i, j);
  return c;
}

ColumnEchelon column_echelon(const IntMatrix& a) {
  ColumnEchelon e{a, int_identity(a.cols()), 0, {}};
  IntMatrix& h = e.h;
  const std::size_t n = a.cols();
  for (std::size_t r = 0; r < h.rows() && e.rank < n; ++r) {
    const std::size_t pc = e.rank;
    for (std::size_t j = pc + 1; j < n; ++j) {
      if (h.at(r, j) == 0) continue;
      if (h.at(r, pc) == 0) {
        column_op(h, pc, j, 0, 1, 1, 0);
        column_op(e.u, pc, j, 0, 1, 1, 0);
        continue;
      }
      const Integer x = h.at(r, pc), y = h.at(r, j);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      const Integer xg = x / g, yg = y / g;
      column_op(h, pc, j, s, t, -yg, xg);
      column_op(e.u, pc, j, s, t, -yg, xg);
    }
    if (h.at(r, pc) == 0) continue;
    if (h.at(r, pc) < 0) {
      negate_column(h, pc);
      negate_column(e.u, pc);
    }
    // Keep earlier pivot columns reduced at this row to limit growth.
    for (std::size_t k = 0; k < pc; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(r, k).get_mpz_t(), h.at(r, pc).get_mpz_t());
      if (q == 0) continue;
      add_column_multiple(h, k, pc, -q);
      add_column_multiple(e.u, k, pc, -q);
    }
    e.pivot_rows.push_back(r);
    ++e.rank;
  }
  return e;
}

std::size_t int_rank(const IntMatrix& a) { return column_echelon(a).rank; }

IntMatrix kernel_basis(const IntMatrix& a) {
  const auto e = column_echelon(a);
  return last_columns(e.u, e.rank);
}

IntMatrix image_basis(const IntMatrix& a) {
  const auto e = column_echelon(a);
  return first_columns(e.h, e.rank);
}

IntMatrix preimage(const IntMatrix& a, const IntMatrix& l) {
  if (a.rows() != l.rows()) throw std::invalid_argument("preimage: row count mismatch");
  const IntMatrix k = kernel_basis(hconcat(a, negate(IntegerRing{}, l)));
  return image_basis(top_rows(k, a.cols()));
}

IntMatrix intersection(const IntMatrix& a, const IntMatrix& b) {
  const IntMatrix k = kernel_basis(hconcat(a, negate(IntegerRing{}, b)));
  return image_basis(mul(a, top_rows(k, a.cols())));
}

std::optional<std::vector<Integer>> solve_any(const IntMatrix& a, const std::vector<Integer>& y) {
  if (y.size() != a.rows()) throw std::invalid_argument("solve_any: size mismatch");
  const auto e = column_echelon(a);
  auto z = solve_echelon(e, y);
  if (!z) return std::nullopt;
  std::vector<Integer> x(a.cols(), 0);
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < e.rank; ++k) x[i] += e.u.at(i, k) * (*z)[k];
  return x;
}

std::optional<IntMatrix> solve_columns(const IntMatrix& basis, const IntMatrix& y) {
  if (basis.rows() != y.rows()) throw std::invalid_argument("solve_columns: row count mismatch");
  const auto e = column_echelon(basis);
  if (e.rank != basis.cols()) throw std::invalid_argument("solve_columns: basis columns are dependent");
  IntMatrix out = int_matrix(basis.cols(), y.cols());
  std::vector<Integer> col(y.rows());
  for (std::size_t j = 0; j < y.cols(); ++j) {
    for (std::size_t i = 0; i < y.rows(); ++i) col[i] = y.at(i, j);
    auto z = solve_echelon(e, col);
    if (!z) return std::nullopt;
    // basis * U_rank = H_rank, so basis coordinates are U_rank z.
    for (std::size_t i = 0; i < basis.cols(); ++i) {
      Integer acc = 0;
      for (std::size_t k = 0; k < e.rank; ++k) acc += e.u.at(i, k) * (*z)[k];
      out.at(i, j) = acc;
    }
  }
  return out;
}

bool lattice_contains(const IntMatrix& generators, const IntMatrix& vectors) {
  const auto e = column_echelon(generators);
  std::vector<Integer> col(vectors.rows());
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    for (std::size_t i = 0; i < vectors.rows(); ++i) col[i] = vectors.at(i, j);
    if (!solve_echelon(e, col)) return false;
  }
  return true;
}

std::vector<Integer> elementary_divisors(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m.at(i, j) != 0 && (pi == rows || abs(m.at(i, j)) < abs(m.at(pi, pj)))) pi = i, pj = j;
      if (pi == rows) {
        for (auto& d : diag) d = abs(d);
        return diag;
      }
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(t, j), m.at(pi, j));
      for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, t), m.at(i, pj));
      const Integer piv = m.at(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const Integer q = m.at(i, t) / piv;
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) m.at(i, j) -= q * m.at(t, j);
        clean = clean && m.at(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const Integer q = m.at(t, j) / piv;
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) m.at(i, j) -= q * m.at(i, t);
        clean = clean && m.at(t, j) == 0;
      }
      if (!clean) continue;
      // Enforce divisibility: fold a bad row into the pivot row and retry.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m.at(i, j) % piv != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) m.at(t, j) += m.at(bad, j);
    }
    diag.push_back(m.at(t, t));
  }
  for (auto& d : diag) d = abs(d);
  return diag;
}

std::vector<Integer> invariant_factors(const std::vector<Integer>& orders) {
  IntMatrix m = int_matrix(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) m.at(i, i) = orders[i];
  std::vector<Integer> out;
  for (const auto& d : elementary_divisors(m))
    if (d != 1) out.push_back(d);
  return out;
}

HomologyGroup<Integer> quotient_group(const IntMatrix& big, const IntMatrix& small) {
  const IntMatrix b = image_basis(big);
  auto coords = solve_columns(b, small);
  if (!coords) throw std::invalid_argument("quotient_group: sublattice is not contained in the lattice");
  HomologyGroup<Integer> g;
  const auto divisors = elementary_divisors(*coords);
  g.free_rank = b.cols() - divisors.size();
  for (const auto& d : divisors)
    if (d != 1) g.torsion.push_back(d);
  return g;
}

HomologyPresentation<Integer> homology_snf(const ChainComplex<IntegerRing>& k) {
  HomologyPresentation<Integer> h;
  for (int i = k.lo(); i <= k.hi(); ++i) h.groups[i] = quotient_group(kernel_basis(k.differential(i)), k.differential(i - 1));
  h.prune();
  return h;
}

namespace {

HomologyPresentation<Integer> homology_mod_raw(int lo, int hi, const std::function<IntMatrix(int)>& diff,
                                               const std::function<std::size_t(int)>& rank, const Integer& f) {
  HomologyPresentation<Integer> h;
  for (int i = lo; i <= hi; ++i) {
    const IntMatrix cycles = preimage(diff(i), int_identity(rank(i + 1), f));
    const IntMatrix boundaries = hconcat(diff(i - 1), int_identity(rank(i), f));
    h.groups[i] = quotient_group(cycles, boundaries);
  }
  h.prune();
  return h;
}

}  // namespace

HomologyPresentation<Integer> homology_mod(const ChainComplex<IntegerRing>& k, const Integer& f) {
  if (f <= 0) throw std::invalid_argument("homology_mod: modulus must be positive");
  return homology_mod_raw(
      k.lo(), k.hi(), [&k](int i) { return k.differential(i); }, [&k](int i) { return k.rank(i); }, f);
}

HomologyPresentation<Integer> homology_mod(const ChainComplex<ModRing>& k) {
  return homology_mod_raw(
      k.lo(), k.hi(), [&k](int i) { return k.differential(i); }, [&k](int i) { return k.rank(i); }, k.ring().n);
}

HomologyPresentation<Integer> canonical(HomologyPresentation<Integer> h) {
  for (auto& [i, g] : h.groups) g.torsion = invariant_factors(g.torsion);
  h.prune();
  return h;
}

std::string group_to_string(const HomologyGroup<Integer>& g) {
  if (g.is_zero()) return "0";
  std::string s;
  if (g.free_rank > 0) s = g.free_rank == 1 ? "Z" : "Z^" + std::to_string(g.free_rank);
  for (const auto& t : g.torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
  return s;
}

std::string presentation_to_string(const HomologyPresentation<Integer>& h) {
  std::string s;
  for (const auto& [i, g] : h.groups) {
    if (g.is_zero()) continue;
    s += (s.empty() ? "" : ", ") + std::string("H^") + std::to_string(i) + " = " + group_to_string(g);
  }
  return s.empty() ? "0" : s;
}

}  // namespace aomega
