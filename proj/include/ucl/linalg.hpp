#ifndef UCL_LINALG_HPP
#define UCL_LINALG_HPP

// Exact linear algebra over a field: row reduction, rank, kernels, inverses,
// and an incremental span used by the saturation and spinning algorithms.

#include <optional>
#include <vector>

#include "ucl/matrix.hpp"

namespace ucl {

template <class S>
struct RowEchelon {
  Mat<S> reduced;                   // reduced row echelon form
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
  bool odd_swaps = false;
  S scale;                           // product of the pivots before normalization
};

template <class S>
RowEchelon<S> row_echelon(const Mat<S>& input, const FieldSpec& field) {
  RowEchelon<S> out;
  Mat<S> a = bind(input, field);
  out.scale = FieldTraits<S>::from_int(field, 1);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < a.rows() && is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      a.row(piv).swap(a.row(row));
      out.odd_swaps = !out.odd_swaps;
    }
    const S p = a(row, col);
    out.scale *= p;
    const S pinv = inverse(p);
    for (Eigen::Index j = col; j < a.cols(); ++j)
      if (!is_zero(a(row, j))) a(row, j) *= pinv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || is_zero(a(i, col))) continue;
      const S factor = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j)
        if (!is_zero(a(row, j))) a(i, j) -= factor * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <class S>
Eigen::Index rank(const Mat<S>& a, const FieldSpec& field) {
  return static_cast<Eigen::Index>(row_echelon(a, field).pivots.size());
}

template <class S>
S determinant(const Mat<S>& a, const FieldSpec& field) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotSquare, "determinant of a non-square matrix");
  auto e = row_echelon(a, field);
  if (static_cast<Eigen::Index>(e.pivots.size()) < a.rows()) return FieldTraits<S>::from_int(field, 0);
  return e.odd_swaps ? -e.scale : e.scale;
}

/// Basis of {x : a x = 0}, one column per basis vector.
template <class S>
Mat<S> kernel(const Mat<S>& a, const FieldSpec& field) {
  auto e = row_echelon(a, field);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  const Eigen::Index nfree = a.cols() - static_cast<Eigen::Index>(e.pivots.size());
  Mat<S> basis(a.cols(), nfree);
  basis.fill(FieldTraits<S>::from_int(field, 0));
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < a.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = FieldTraits<S>::from_int(field, 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis(e.pivots[r], k) = -e.reduced(static_cast<Eigen::Index>(r), f);
    ++k;
  }
  return basis;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& a, const FieldSpec& field) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotSquare, "inverse of a non-square matrix");
  const Eigen::Index n = a.rows();
  Mat<S> aug(n, 2 * n);
  aug.fill(FieldTraits<S>::from_int(field, 0));
  aug.leftCols(n) = a;
  for (Eigen::Index i = 0; i < n; ++i) aug(i, n + i) = FieldTraits<S>::from_int(field, 1);
  auto e = row_echelon(aug, field);
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    return std::nullopt;
  return Mat<S>(e.reduced.rightCols(n));
}

template <class S>
Mat<S> identity(Eigen::Index n, const FieldSpec& field) {
  Mat<S> m(n, n);
  m.fill(FieldTraits<S>::from_int(field, 0));
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = FieldTraits<S>::from_int(field, 1);
  return m;
}

template <class S>
Mat<S> scalar_product(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
  return a * b;
}

/// Row-reduced basis of a growing subspace of S^dim.
template <class S>
class IncrementalSpan {
 public:
  IncrementalSpan(Eigen::Index dim, FieldSpec field) : dim_(dim), field_(field) {}

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(rows_.size()); }
  Eigen::Index ambient() const { return dim_; }

  /// Adds v; returns false when v already lies in the span.
  bool add(const Vec<S>& v) {
    Vec<S> r = bind(Mat<S>(v), field_);
    reduce(r);
    Eigen::Index lead = 0;
    while (lead < dim_ && is_zero(r(lead))) ++lead;
    if (lead == dim_) return false;
    const S inv = inverse(r(lead));
    for (Eigen::Index j = lead; j < dim_; ++j) r(j) *= inv;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const S c = rows_[k](lead);
      if (is_zero(c)) continue;
      for (Eigen::Index j = lead; j < dim_; ++j) rows_[k](j) -= c * r(j);
    }
    rows_.push_back(std::move(r));
    leads_.push_back(lead);
    originals_.push_back(v);
    return true;
  }

  bool contains(const Vec<S>& v) const {
    Vec<S> r = bind(Mat<S>(v), field_);
    reduce(r);
    for (Eigen::Index j = 0; j < dim_; ++j)
      if (!is_zero(r(j))) return false;
    return true;
  }

  /// The accepted vectors in insertion order (a basis of the span).
  const std::vector<Vec<S>>& basis() const { return originals_; }

 private:
  void reduce(Vec<S>& r) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const S c = r(leads_[k]);
      if (is_zero(c)) continue;
      for (Eigen::Index j = leads_[k]; j < dim_; ++j)
        if (!is_zero(rows_[k](j))) r(j) -= c * rows_[k](j);
    }
  }

  Eigen::Index dim_;
  FieldSpec field_;
  std::vector<Vec<S>> rows_;
  std::vector<Eigen::Index> leads_;
  std::vector<Vec<S>> originals_;
};

}  // namespace ucl

#endif  // UCL_LINALG_HPP
