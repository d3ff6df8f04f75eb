#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "ucl/pencil.hpp"

using namespace ucl;

namespace {

using P = Poly<Rational>;

PolyMatrix<Rational> consts(const RingPtr& ring, std::initializer_list<long long> v, Eigen::Index n) {
  PolyMatrix<Rational> m(n, n);
  auto it = v.begin();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = P::constant(ring, Rational(*it++));
  return m;
}

PolyMatrix<Rational> quadric_phi(const RingPtr& ring) {
  PolyMatrix<Rational> phi(2, 2);
  phi << P::y(ring, 0), P::y(ring, 1), P::y(ring, 2), P::y(ring, 3);
  return phi;
}

template <class S>
LinearPencil<S> random_pencil(const RingPtr& ring, Eigen::Index t, std::mt19937_64& rng) {
  std::vector<PolyMatrix<S>> coeffs;
  const FieldSpec& f = ring->field();
  for (std::size_t i = 0; i < ring->fiber_vars(); ++i) {
    PolyMatrix<S> a(t, t);
    for (Eigen::Index r = 0; r < t; ++r)
      for (Eigen::Index c = 0; c < t; ++c) {
        Poly<S> e = Poly<S>::constant(ring, FieldTraits<S>::random(f, rng, 4));
        for (std::size_t j = 1; j <= ring->base_vars(); ++j)
          e = e + Poly<S>::constant(ring, FieldTraits<S>::random(f, rng, 4)) * Poly<S>::t(ring, j);
        a(r, c) = e;
      }
    coeffs.push_back(std::move(a));
  }
  return LinearPencil<S>(ring, std::move(coeffs));
}

}  // namespace

TEST_CASE("assemble examples") {
  const RingPtr ring = make_ring(FieldSpec::rationals(), 0, 4);
  const LinearPencil<Rational> p(ring, {consts(ring, {1, 0, 0, 0}, 2), consts(ring, {0, 1, 0, 0}, 2),
                                        consts(ring, {0, 0, 1, 0}, 2), consts(ring, {0, 0, 0, 1}, 2)});
  CHECK(equal(assemble(p), quadric_phi(ring)));

  const RingPtr r2 = make_ring(FieldSpec::rationals(), 0, 2);
  const LinearPencil<Rational> h(r2, {consts(r2, {2}, 1), consts(r2, {3}, 1)});
  CHECK(to_string(assemble(h)(0, 0)) == "2*y0 + 3*y1");

  const auto z = assemble(LinearPencil<Rational>::zero(ring, 3));
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) CHECK(z(i, j).is_zero());
}

TEST_CASE("extract examples") {
  const RingPtr ring = make_ring(FieldSpec::rationals(), 0, 4);
  const auto p = extract(quadric_phi(ring), ring);
  CHECK(equal(p.coefficient(0), consts(ring, {1, 0, 0, 0}, 2)));
  CHECK(equal(p.coefficient(3), consts(ring, {0, 0, 0, 1}, 2)));

  const RingPtr rt = make_ring(FieldSpec::rationals(), 1, 1);
  PolyMatrix<Rational> m(1, 1);
  m(0, 0) = P::t(rt, 1) * P::y(rt, 0);
  CHECK(extract(m, rt).coefficient(0)(0, 0) == P::t(rt, 1));

  PolyMatrix<Rational> bad(2, 2);
  bad << P::y(ring, 0) * P::y(ring, 0), P(ring), P(ring), P::y(ring, 0);
  try {
    extract(bad, ring);
    FAIL("expected NonLinearEntry");
  } catch (const NonLinearEntry& e) {
    CHECK(e.row() == 0);
    CHECK(e.col() == 0);
  }
}

TEST_CASE("pencil_power examples") {
  const RingPtr ring = make_ring(FieldSpec::rationals(), 0, 4);
  const auto phi = extract(quadric_phi(ring), ring);
  const auto sq = pencil_power(phi, 2);
  // oracle: independent 2x2 product
  oracle::NMat o{{oracle::var(4, 0), oracle::var(4, 1)}, {oracle::var(4, 2), oracle::var(4, 3)}};
  const auto o2 = oracle::matmul(o, o, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(oracle::from_ucl(sq(i, j), 4) == o2[i][j]);
  CHECK(to_string(sq(0, 0)) == "y0^2 + y1*y2");

  PolyMatrix<Rational> block = poly_zero<Rational>(ring, 4, 4);
  block.block(0, 2, 2, 2) = quadric_phi(ring);
  block.block(2, 0, 2, 2) = adjugate(quadric_phi(ring));
  const auto b2 = pencil_power(extract(block, ring), 2);
  const P f = P::y(ring, 0) * P::y(ring, 3) - P::y(ring, 1) * P::y(ring, 2);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) CHECK(b2(i, j) == (i == j ? f : P(ring)));
  CHECK(equal(pencil_power(phi, 1), assemble(phi)));
}

TEST_CASE("specialize examples") {
  const RingPtr ring = make_ring(FieldSpec::rationals(), 1, 2);
  PolyMatrix<Rational> a0(1, 1), a1(1, 1);
  a0(0, 0) = P::t(ring, 1);
  a1(0, 0) = P::constant(ring, 1);
  const LinearPencil<Rational> p(ring, {a0, a1});
  const auto s = specialize(p, std::vector<Rational>{5});
  CHECK(s.coefficient(0)(0, 0) == P::constant(s.ring(), 5));
  CHECK(s.coefficient(1)(0, 0) == P::constant(s.ring(), 1));
  CHECK(s.ring()->base_vars() == 0);
  try {
    specialize(p, std::vector<Rational>{});
    FAIL("expected PartialAssignment");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PartialAssignment);
  }
}

TEST_CASE("round trip extract/assemble") {
  std::mt19937_64 rng(7);
  for (const FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(5)}) {
    with_field(f, [&]<class S>() {
      const RingPtr ring = make_ring(f, 2, 3);
      for (int k = 0; k < 50; ++k) {
        const auto p = random_pencil<S>(ring, 3, rng);
        const auto m = assemble(p);
        CHECK(extract(m, ring) == p);
        CHECK(equal(assemble(extract(m, ring)), m));
        for (Eigen::Index i = 0; i < 3; ++i)
          for (Eigen::Index j = 0; j < 3; ++j) CHECK(m(i, j).is_y_homogeneous(1));
      }
    });
  }
}

TEST_CASE("pencil powers are y-homogeneous") {
  std::mt19937_64 rng(8);
  const RingPtr ring = make_ring(FieldSpec::prime(11), 1, 2);
  for (int k = 0; k < 40; ++k) {
    const auto p = random_pencil<ModP>(ring, 2, rng);
    for (unsigned d = 1; d <= 4; ++d) {
      const auto m = pencil_power(p, d);
      for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j) CHECK(m(i, j).is_y_homogeneous(d));
    }
  }
}

TEST_CASE("specialize commutes with pencil_power") {
  std::mt19937_64 rng(9);
  for (const FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(7)}) {
    with_field(f, [&]<class S>() {
      const RingPtr ring = make_ring(f, 1, 2);
      const RingPtr fiber = fiber_ring(ring);
      for (int k = 0; k < 100; ++k) {
        const auto p = random_pencil<S>(ring, 2, rng);
        const std::vector<S> pt{FieldTraits<S>::random(f, rng, 6)};
        const auto lhs = specialize(pencil_power(p, 2), ring, fiber, pt);
        const auto rhs = pencil_power(specialize(p, pt), 2);
        CHECK(equal(lhs, rhs));
      }
    });
  }
}

TEST_CASE("mf_verify examples") {
  const RingPtr ring = make_ring(FieldSpec::rationals(), 0, 4);
  const P f = P::y(ring, 0) * P::y(ring, 3) - P::y(ring, 1) * P::y(ring, 2);
  PolyMatrix<Rational> psi(2, 2);
  psi << P::y(ring, 3), -P::y(ring, 1), -P::y(ring, 2), P::y(ring, 0);
  CHECK(mf_verify(MFPair<Rational>{ring, quadric_phi(ring), psi, f}).pass);

  const RingPtr r1 = make_ring(FieldSpec::rationals(), 0, 1);
  PolyMatrix<Rational> y(1, 1);
  y(0, 0) = P::y(r1, 0);
  CHECK(mf_verify(MFPair<Rational>{r1, y, y, P::y(r1, 0) * P::y(r1, 0)}).pass);

  const auto bad = mf_verify(MFPair<Rational>{ring, quadric_phi(ring), quadric_phi(ring), f});
  CHECK_FALSE(bad.pass);
  CHECK(bad.row == 0);
  CHECK(bad.col == 0);
  CHECK(to_string(bad.actual) == "y0^2 + y1*y2");
  CHECK(bad.expected == f);
}
