#ifndef UCL_PENCIL_HPP
#define UCL_PENCIL_HPP

// Matrices of linear forms M(y) = sum_i y_i A_i with coefficient matrices A_i
// over the base ring k[t1..tm], and linear matrix factorizations.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucl/matrix.hpp"

namespace ucl {

template <class S>
class LinearPencil {
 public:
  /// One t x t matrix per fiber variable; entries must not involve y.
  LinearPencil(RingPtr ring, std::vector<PolyMatrix<S>> coefficients)
      : ring_(std::move(ring)), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != ring_->fiber_vars())
      throw Error(ErrorCode::ShapeMismatch, "pencil needs one coefficient matrix per fiber variable");
    if (coeffs_.empty() || coeffs_.front().rows() < 1)
      throw Error(ErrorCode::ShapeMismatch, "pencil size must be at least 1");
    size_ = coeffs_.front().rows();
    for (auto& a : coeffs_) {
      if (a.rows() != size_ || a.cols() != size_)
        throw Error(ErrorCode::ShapeMismatch, "pencil matrices must share one square size");
      a = in_ring(a, ring_);
      for (Eigen::Index i = 0; i < size_; ++i)
        for (Eigen::Index j = 0; j < size_; ++j)
          if (!a(i, j).is_y_homogeneous(0))
            throw Error(ErrorCode::InvalidArgument, "pencil coefficients must lie in the base ring");
    }
  }

  static LinearPencil zero(const RingPtr& ring, Eigen::Index size) {
    return LinearPencil(ring, std::vector<PolyMatrix<S>>(ring->fiber_vars(), poly_zero<S>(ring, size, size)));
  }

  const RingPtr& ring() const noexcept { return ring_; }
  Eigen::Index size() const noexcept { return size_; }
  const std::vector<PolyMatrix<S>>& coefficients() const noexcept { return coeffs_; }
  const PolyMatrix<S>& coefficient(std::size_t i) const { return coeffs_.at(i); }
  bool is_constant() const { return ring_->base_vars() == 0; }

  friend bool operator==(const LinearPencil& a, const LinearPencil& b) {
    if (!same_ring(a.ring_, b.ring_) || a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      if (!equal(a.coeffs_[i], b.coeffs_[i])) return false;
    return true;
  }

 private:
  RingPtr ring_;
  Eigen::Index size_ = 0;
  std::vector<PolyMatrix<S>> coeffs_;
};

/// M(y) = sum_i y_i A_i.
template <class S>
PolyMatrix<S> assemble(const LinearPencil<S>& p) {
  const auto& ring = p.ring();
  PolyMatrix<S> m = poly_zero<S>(ring, p.size(), p.size());
  for (std::size_t i = 0; i < ring->fiber_vars(); ++i) {
    const Poly<S> yi = Poly<S>::y(ring, i);
    const auto& a = p.coefficient(i);
    for (Eigen::Index r = 0; r < p.size(); ++r)
      for (Eigen::Index c = 0; c < p.size(); ++c)
        if (!a(r, c).is_zero()) m(r, c) += a(r, c) * yi;
  }
  return m;
}

/// Unique decomposition of a y-linear square matrix into its pencil.
/// Throws NonLinearEntry at the first entry with a term of y-degree != 1.
template <class S>
LinearPencil<S> extract(const PolyMatrix<S>& m, const RingPtr& ring) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "pencil extraction needs a square matrix");
  std::vector<PolyMatrix<S>> coeffs(ring->fiber_vars(), poly_zero<S>(ring, m.rows(), m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Poly<S> entry = m(r, c).in_ring(ring);
      for (const auto& [ymono, coeff] : entry.split_by_y()) {
        if (ymono.total_degree() != 1) throw NonLinearEntry(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        std::size_t var = 0;
        while (ymono.exp[var] == 0) ++var;
        coeffs[var](r, c) = coeff;
      }
    }
  }
  return LinearPencil<S>(ring, std::move(coeffs));
}

/// M(y)^d by left-to-right repeated multiplication.
template <class S>
PolyMatrix<S> pencil_power(const LinearPencil<S>& p, unsigned d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "power must be at least 1");
  const PolyMatrix<S> m = assemble(p);
  PolyMatrix<S> acc = m;
  for (unsigned k = 1; k < d; ++k) acc = multiply(acc, m);
  return in_ring(acc, p.ring());
}

/// Ring with the same field and fiber variables and no base variables.
inline RingPtr fiber_ring(const RingPtr& ring) { return make_ring(ring->field(), 0, ring->fiber_vars()); }

/// Substitutes t1..tm (all of them) and moves to the fiber ring.
template <class S>
Poly<S> specialize(const Poly<S>& f, const RingPtr& target, const std::vector<S>& base_point) {
  const RingPtr& ring = f.ring() ? f.ring() : target;
  if (base_point.size() != ring->base_vars())
    throw Error(ErrorCode::PartialAssignment, "base point must assign every base variable (expected " +
                                                  std::to_string(ring->base_vars()) + " values)");
  std::map<std::size_t, S> values;
  for (std::size_t j = 1; j <= ring->base_vars(); ++j)
    values.emplace(ring->t_index(j), FieldTraits<S>::bind(base_point[j - 1], ring->field()));
  return f.in_ring(ring).substitute(values).drop_base_vars(target);
}

template <class S>
PolyMatrix<S> specialize(const PolyMatrix<S>& m, const RingPtr& source, const RingPtr& target,
                         const std::vector<S>& base_point) {
  PolyMatrix<S> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = specialize(m(i, j).in_ring(source), target, base_point);
  return r;
}

/// The fiber pencil A_i(x) at a base point x; the result has no base variables.
template <class S>
LinearPencil<S> specialize(const LinearPencil<S>& p, const std::vector<S>& base_point) {
  const RingPtr target = fiber_ring(p.ring());
  if (base_point.size() != p.ring()->base_vars())
    throw Error(ErrorCode::PartialAssignment, "base point must assign every base variable (expected " +
                                                  std::to_string(p.ring()->base_vars()) + " values)");
  std::vector<PolyMatrix<S>> coeffs;
  for (const auto& a : p.coefficients()) coeffs.push_back(specialize(a, p.ring(), target, base_point));
  return LinearPencil<S>(target, std::move(coeffs));
}

// ---------------------------------------------------------------------------

/// A candidate linear matrix factorization phi * psi = psi * phi = f * I.
template <class S>
struct MFPair {
  RingPtr ring;
  PolyMatrix<S> phi;
  PolyMatrix<S> psi;
  Poly<S> f;
};

template <class S>
struct MFReport {
  bool pass = false;
  std::string product;  // "phi*psi" or "psi*phi" for the first failure
  Eigen::Index row = -1;
  Eigen::Index col = -1;
  Poly<S> actual;
  Poly<S> expected;
};

template <class S>
MFReport<S> mf_verify(const MFPair<S>& pair) {
  const Eigen::Index t = pair.phi.rows();
  if (pair.phi.cols() != t || pair.psi.rows() != t || pair.psi.cols() != t)
    throw Error(ErrorCode::ShapeMismatch, "phi and psi must be square of the same size");
  if (!pair.f.in_ring(pair.ring).is_y_homogeneous(2) || pair.f.is_zero())
    throw Error(ErrorCode::NotHomogeneous, "f must be y-homogeneous of degree 2");
  for (Eigen::Index i = 0; i < t; ++i)
    for (Eigen::Index j = 0; j < t; ++j)
      if (!pair.phi(i, j).in_ring(pair.ring).is_y_homogeneous(1) || !pair.psi(i, j).in_ring(pair.ring).is_y_homogeneous(1))
        throw NonLinearEntry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  MFReport<S> report;
  const std::pair<const char*, PolyMatrix<S>> products[] = {
      {"phi*psi", multiply(pair.phi, pair.psi)},
      {"psi*phi", multiply(pair.psi, pair.phi)},
  };
  const Poly<S> zero(pair.ring);
  const Poly<S> f = pair.f.in_ring(pair.ring);
  for (const auto& [name, prod] : products) {
    for (Eigen::Index i = 0; i < t; ++i) {
      for (Eigen::Index j = 0; j < t; ++j) {
        const Poly<S>& want = (i == j) ? f : zero;
        if (prod(i, j) != want) {
          report.product = name;
          report.row = i;
          report.col = j;
          report.actual = prod(i, j).in_ring(pair.ring);
          report.expected = want;
          return report;
        }
      }
    }
  }
  report.pass = true;
  return report;
}

}  // namespace ucl

#endif  // UCL_PENCIL_HPP
