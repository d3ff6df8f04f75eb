#ifndef UCL_TESTS_FIXTURES_HPP
#define UCL_TESTS_FIXTURES_HPP

// The quadric y0*y3 - y1*y2 with phi = [[y0,y1],[y2,y3]] and psi = adj(phi)
// written out by hand, plus small helpers shared by the test files.

#include "ucl/constructors.hpp"

namespace fixtures {

using namespace ucl;

template <class S = Rational>
struct Quadric {
  RingPtr ring;
  Poly<S> f;
  PolyMatrix<S> phi, psi;
};

template <class S = Rational>
Quadric<S> quadric(const FieldSpec& field = FieldSpec::rationals(), std::size_t base_vars = 0) {
  using P = Poly<S>;
  Quadric<S> q;
  q.ring = make_ring(field, base_vars, 4);
  const auto y = [&](std::size_t i) { return P::y(q.ring, i); };
  q.f = y(0) * y(3) - y(1) * y(2);
  q.phi.resize(2, 2);
  q.phi << y(0), y(1), y(2), y(3);
  q.psi.resize(2, 2);
  q.psi << y(3), -y(1), -y(2), y(0);
  return q;
}

template <class S = Rational>
CliffordRep<S> verified(CliffordRep<S> rep) {
  if (!verify_relation(rep).pass) throw Error(ErrorCode::InternalInconsistency, "fixture failed to verify");
  return rep;
}

template <class S = Rational>
CliffordRep<S> block_quadric(const FieldSpec& field = FieldSpec::rationals()) {
  const auto q = quadric<S>(field);
  return verified(block_from_mf(MFPair<S>{q.ring, q.phi, q.psi, q.f}));
}

template <class S>
std::vector<S> scalars(const FieldSpec& field, std::initializer_list<long long> v) {
  std::vector<S> out;
  for (auto x : v) out.push_back(FieldTraits<S>::from_int(field, x));
  return out;
}

inline CliffordRep<ModP> clock_shift(std::uint64_t p, std::initializer_list<long long> roots) {
  const FieldSpec field = FieldSpec::prime(p);
  const RingPtr ring = make_ring(field, 0, 2);
  return verified(clock_shift_rep(make_split_binary_form<ModP>(ring, scalars<ModP>(field, roots))));
}

template <class S>
Mat<S> scalar_matrix(const FieldSpec& field, Eigen::Index n, std::initializer_list<long long> v) {
  Mat<S> m(n, n);
  auto it = v.begin();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = FieldTraits<S>::from_int(field, *it++);
  return m;
}

}  // namespace fixtures

#endif  // UCL_TESTS_FIXTURES_HPP
