#ifndef UCL_MATRIX_HPP
#define UCL_MATRIX_HPP

// Dense matrices of polynomials and of field scalars, stored in Eigen.

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "ucl/poly.hpp"

namespace ucl {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class S>
using PolyMatrix = Mat<Poly<S>>;

template <class S>
PolyMatrix<S> poly_zero(const RingPtr& ring, Eigen::Index rows, Eigen::Index cols) {
  PolyMatrix<S> m(rows, cols);
  m.fill(Poly<S>(ring));
  return m;
}

template <class S>
PolyMatrix<S> poly_identity(const RingPtr& ring, Eigen::Index n) {
  PolyMatrix<S> m = poly_zero<S>(ring, n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Poly<S>::constant(ring, FieldTraits<S>::from_int(ring->field(), 1));
  return m;
}

/// Attaches every entry to `ring` (binds ring-less zeros and literals).
template <class S>
PolyMatrix<S> in_ring(const PolyMatrix<S>& m, const RingPtr& ring) {
  PolyMatrix<S> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).in_ring(ring);
  return r;
}

template <class S>
PolyMatrix<S> multiply(const PolyMatrix<S>& a, const PolyMatrix<S>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
  PolyMatrix<S> r(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Poly<S> acc;
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc += a(i, k) * b(k, j);
      }
      r(i, j) = std::move(acc);
    }
  }
  return r;
}

/// Entry-wise equality; ring-less zeros compare equal to ring zeros.
template <class T>
bool equal(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <class T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

template <class T>
Mat<T> block_diagonal(const Mat<T>& a, const Mat<T>& b, const T& zero) {
  Mat<T> r(a.rows() + b.rows(), a.cols() + b.cols());
  r.fill(zero);
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

/// Scalar matrix from a matrix with constant entries.
template <class S>
Mat<S> to_scalar(const PolyMatrix<S>& m, const FieldSpec& field) {
  Mat<S> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      r(i, j) = FieldTraits<S>::bind(m(i, j).constant_value(), field);
  return r;
}

template <class S>
PolyMatrix<S> to_poly(const Mat<S>& m, const RingPtr& ring) {
  PolyMatrix<S> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Poly<S>::constant(ring, m(i, j));
  return r;
}

template <class S>
Mat<S> bind(const Mat<S>& m, const FieldSpec& field) {
  Mat<S> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = FieldTraits<S>::bind(m(i, j), field);
  return r;
}

// ---------------------------------------------------------------------------
// Determinants of polynomial matrices.

namespace detail {

template <class S>
Poly<S> cofactor_det(const PolyMatrix<S>& m, std::vector<Eigen::Index>& cols, Eigen::Index row) {
  const Eigen::Index n = m.rows();
  if (row == n) return Poly<S>(1);
  Poly<S> sum;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Eigen::Index c = cols[k];
    if (!m(row, c).is_zero()) {
      std::vector<Eigen::Index> rest;
      rest.reserve(cols.size() - 1);
      for (std::size_t l = 0; l < cols.size(); ++l)
        if (l != k) rest.push_back(cols[l]);
      Poly<S> minor = cofactor_det(m, rest, row + 1);
      if (!minor.is_zero()) {
        Poly<S> term = m(row, c) * minor;
        sum = sign > 0 ? sum + term : sum - term;
      }
    }
    sign = -sign;
  }
  return sum;
}

}  // namespace detail

/// Laplace expansion along rows.
template <class S>
Poly<S> det_cofactor(const PolyMatrix<S>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "determinant of a non-square matrix");
  std::vector<Eigen::Index> cols(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) cols[static_cast<std::size_t>(j)] = j;
  return detail::cofactor_det(m, cols, 0);
}

/// Fraction-free Bareiss elimination with row pivoting; every division is
/// exact in the polynomial ring.
template <class S>
Poly<S> det_bareiss(PolyMatrix<S> a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotSquare, "determinant of a non-square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return Poly<S>(1);
  bool negate = false;
  Poly<S> prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      Eigen::Index piv = k + 1;
      while (piv < n && a(piv, k).is_zero()) ++piv;
      if (piv == n) return Poly<S>(a(0, 0).ring());
      a.row(k).swap(a.row(piv));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Poly<S> num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        auto q = Poly<S>::divide_exact(num, prev);
        if (!q) throw Error(ErrorCode::InternalInconsistency, "Bareiss division was not exact");
        a(i, j) = std::move(*q);
      }
      a(i, k) = Poly<S>(a(i, k).ring());
    }
    prev = a(k, k);
  }
  Poly<S> d = a(n - 1, n - 1);
  return negate ? -d : d;
}

/// Cofactor expansion up to size 6, Bareiss above.
template <class S>
Poly<S> det(const PolyMatrix<S>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "determinant of a non-square matrix");
  return m.rows() <= 6 ? det_cofactor(m) : det_bareiss(m);
}

template <class S>
PolyMatrix<S> adjugate(const PolyMatrix<S>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "adjugate of a non-square matrix");
  const Eigen::Index n = m.rows();
  PolyMatrix<S> adj(n, n);
  if (n == 1) {
    adj(0, 0) = Poly<S>(1).in_ring(m(0, 0).ring() ? m(0, 0).ring() : RingPtr{});
    return adj;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      PolyMatrix<S> minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Poly<S> d = det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return adj;
}

template <class S>
std::vector<std::vector<std::string>> to_strings(const PolyMatrix<S>& m) {
  std::vector<std::vector<std::string>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(to_string(m(i, j)));
  return out;
}

template <class S>
std::vector<std::vector<std::string>> to_strings(const Mat<S>& m) {
  std::vector<std::vector<std::string>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(to_string(m(i, j)));
  return out;
}

}  // namespace ucl

#endif  // UCL_MATRIX_HPP
