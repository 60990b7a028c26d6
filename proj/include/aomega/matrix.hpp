#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aomega {

/// Dense row-major matrix. Arithmetic goes through a ring context, so the
/// same type serves Z, Z/n, the A_inf model, Z[zeta] and F_p[u].
template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const E& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  E& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const E& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<E> data_;
};

template <class Ring>
using RingMatrix = Matrix<typename Ring::Element>;

template <class Ring>
RingMatrix<Ring> zero_matrix(const Ring& ring, std::size_t rows, std::size_t cols) {
  return RingMatrix<Ring>(rows, cols, ring.zero());
}

template <class Ring>
RingMatrix<Ring> identity_matrix(const Ring& ring, std::size_t n) {
  auto m = zero_matrix(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
  return m;
}

template <class Ring>
RingMatrix<Ring> from_ints(const Ring& ring, const std::vector<std::vector<long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  auto m = zero_matrix(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("from_ints: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = ring.from_int(rows[i][j]);
  }
  return m;
}

template <class Ring>
RingMatrix<Ring> multiply(const Ring& ring, const RingMatrix<Ring>& a, const RingMatrix<Ring>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("multiply: shape mismatch " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  auto c = zero_matrix(ring, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (ring.is_zero(a.at(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!ring.is_zero(b.at(k, j))) c.at(i, j) = ring.add(c.at(i, j), ring.mul(a.at(i, k), b.at(k, j)));
    }
  return c;
}

template <class Ring>
RingMatrix<Ring> add(const Ring& ring, const RingMatrix<Ring>& a, const RingMatrix<Ring>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
  auto c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = ring.add(a.at(i, j), b.at(i, j));
  return c;
}

template <class Ring>
RingMatrix<Ring> scale(const Ring& ring, const typename Ring::Element& s, const RingMatrix<Ring>& a) {
  auto c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = ring.mul(s, a.at(i, j));
  return c;
}

template <class Ring>
RingMatrix<Ring> negate(const Ring& ring, const RingMatrix<Ring>& a) {
  auto c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = ring.neg(a.at(i, j));
  return c;
}

template <class Ring>
bool is_zero_matrix(const Ring& ring, const RingMatrix<Ring>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ring.is_zero(a.at(i, j))) return false;
  return true;
}

template <class Ring>
bool matrices_equal(const Ring& ring, const RingMatrix<Ring>& a, const RingMatrix<Ring>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ring.is_zero(ring.sub(a.at(i, j), b.at(i, j)))) return false;
  return true;
}

template <class E>
Matrix<E> transpose(const Matrix<E>& a) {
  Matrix<E> t(a.cols(), a.rows(), E{});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
  return t;
}

/// Block matrix [[a, b], [c, d]]; blocks must have compatible shapes.
template <class Ring>
RingMatrix<Ring> block(const Ring& ring, const RingMatrix<Ring>& a, const RingMatrix<Ring>& b,
                       const RingMatrix<Ring>& c, const RingMatrix<Ring>& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw std::invalid_argument("block: incompatible block shapes");
  auto m = zero_matrix(ring, a.rows() + c.rows(), a.cols() + b.cols());
  auto put = [&m](const RingMatrix<Ring>& x, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) m.at(r0 + i, c0 + j) = x.at(i, j);
  };
  put(a, 0, 0);
  put(b, 0, a.cols());
  put(c, a.rows(), 0);
  put(d, a.rows(), a.cols());
  return m;
}

template <class Ring>
RingMatrix<Ring> kronecker(const Ring& ring, const RingMatrix<Ring>& a, const RingMatrix<Ring>& b) {
  auto m = zero_matrix(ring, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (ring.is_zero(a.at(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m.at(i * b.rows() + k, j * b.cols() + l) = ring.mul(a.at(i, j), b.at(k, l));
    }
  return m;
}

/// Rank over the fraction field of a domain, by fraction-free (Bareiss)
/// elimination; needs an exact_div that returns genuine quotients.
template <class Ring>
std::size_t fraction_field_rank(const Ring& ring, RingMatrix<Ring> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  auto prev = ring.one();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && ring.is_zero(m.at(pivot, c))) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    const auto piv = m.at(rank, c);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        auto num = ring.sub(ring.mul(piv, m.at(i, j)), ring.mul(m.at(i, c), m.at(rank, j)));
        auto q = ring.exact_div(num, prev);
        if (!q) throw std::logic_error("fraction_field_rank: inexact Bareiss step");
        m.at(i, j) = *q;
      }
      m.at(i, c) = ring.zero();
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

template <class Ring>
std::string matrix_to_string(const Ring& ring, const RingMatrix<Ring>& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < a.cols(); ++j) s += (j ? ", " : "") + ring.str(a.at(i, j));
  }
  return s + "]";
}

}  // namespace aomega
