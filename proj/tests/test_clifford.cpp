#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace ucl;
using fixtures::scalars;

namespace {

using P = Poly<Rational>;

CliffordRep<Rational> hyperplane_23() {
  const RingPtr ring = make_ring(FieldSpec::rationals(), 0, 2);
  return hyperplane_rep(P::y(ring, 0).scaled(2) + P::y(ring, 1).scaled(3));
}

template <class S>
Mat<S> random_invertible(const FieldSpec& f, Eigen::Index n, std::mt19937_64& rng) {
  while (true) {
    Mat<S> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = FieldTraits<S>::random(f, rng, 3);
    if (inverse(m, f)) return m;
  }
}

}  // namespace

TEST_CASE("verify_relation examples") {
  auto h = hyperplane_23();
  const auto c = verify_relation(h);
  CHECK(c.pass);
  CHECK(h.clifford_index() == 1);

  auto block = fixtures::block_quadric();
  CHECK(block.size() == 4);
  CHECK(block.clifford_index() == 2);

  const auto q = fixtures::quadric();
  CliffordRep<Rational> bare(extract(q.phi, q.ring), q.f, 2);
  const auto fail = verify_relation(bare);
  CHECK_FALSE(fail.pass);
  CHECK(fail.row == 0);
  CHECK(fail.col == 0);
  CHECK(fail.difference == P::y(q.ring, 0) * P::y(q.ring, 0) + P::y(q.ring, 1) * P::y(q.ring, 2) - q.f);
  CHECK_FALSE(bare.verified());
  CHECK_THROWS_AS(bare.clifford_index(), Error);
}

TEST_CASE("verify_relation rejects a non-homogeneous form") {
  const RingPtr ring = make_ring(FieldSpec::rationals(), 0, 2);
  PolyMatrix<Rational> m(1, 1);
  m(0, 0) = P::y(ring, 0);
  CliffordRep<Rational> rep(extract(m, ring), P::y(ring, 0) * P::y(ring, 0) + P::y(ring, 1), 2);
  CHECK_THROWS_AS(verify_relation(rep), Error);
}

TEST_CASE("det_factorization examples") {
  auto block = fixtures::block_quadric();
  const auto fb = det_factorization(block);
  CHECK(fb.unit == Rational(1));
  CHECK(fb.exponent == 2);

  auto cs = fixtures::clock_shift(7, {1, 2, 4});
  const auto fc = det_factorization(cs);
  CHECK(fc.unit == ModP::from_integer(1, 7));
  CHECK(fc.exponent == 1);

  auto h = hyperplane_23();
  verify_relation(h);
  const auto fh = det_factorization(h);
  CHECK(fh.unit == Rational(1));
  CHECK(fh.exponent == 1);

  const auto q = fixtures::quadric();
  CliffordRep<Rational> bare(extract(q.phi, q.ring), q.f, 2);
  CHECK_THROWS_AS(det_factorization(bare), Error);
  const auto forced = det_factorization(bare, true);
  CHECK(forced.exponent == 1);
}

TEST_CASE("equivalence_test examples") {
  const FieldSpec qq = FieldSpec::rationals();
  auto block = fixtures::block_quadric();
  Mat<Rational> theta = identity<Rational>(4, qq);
  theta(0, 1) = Rational(1);
  auto conj = fixtures::verified(conjugate(block, theta));
  const auto r = equivalence_test(block, conj);
  CHECK(r.verdict == EquivalenceVerdict::Equivalent);
  REQUIRE(r.theta);
  CHECK(intertwines(*r.theta, block.pencil(), conj.pencil()));

  auto a = fixtures::clock_shift(7, {1, 2, 4});
  auto b = fixtures::clock_shift(7, {2, 4, 1});
  const auto rab = equivalence_test(a, b);
  CHECK(rab.verdict == EquivalenceVerdict::Equivalent);
  REQUIRE(rab.theta);
  // the witness is a scaled permutation matrix
  const auto th = to_scalar(*rab.theta, FieldSpec::prime(7));
  for (Eigen::Index i = 0; i < 3; ++i) {
    int nonzero = 0;
    for (Eigen::Index j = 0; j < 3; ++j) nonzero += th(i, j).is_zero() ? 0 : 1;
    CHECK(nonzero == 1);
  }

  auto sum = direct_sum(block, block);
  CHECK(equivalence_test(block, sum).verdict == EquivalenceVerdict::Inequivalent);
}

TEST_CASE("inequivalent representations of the same size") {
  // y0^2 + y1^2 - y2^2 has two 2x2 representations that differ in the sign
  // of the central element A0*A1*A2
  const FieldSpec qq = FieldSpec::rationals();
  const RingPtr ring = make_ring(qq, 0, 3);
  const P f = P::y(ring, 0) * P::y(ring, 0) + P::y(ring, 1) * P::y(ring, 1) - P::y(ring, 2) * P::y(ring, 2);
  const auto a0 = to_poly(fixtures::scalar_matrix<Rational>(qq, 2, {0, 1, 1, 0}), ring);
  const auto a1 = to_poly(fixtures::scalar_matrix<Rational>(qq, 2, {1, 0, 0, -1}), ring);
  const auto a2 = to_poly(fixtures::scalar_matrix<Rational>(qq, 2, {0, -1, 1, 0}), ring);
  const auto m2 = to_poly(fixtures::scalar_matrix<Rational>(qq, 2, {0, 1, -1, 0}), ring);
  auto plus = fixtures::verified(CliffordRep<Rational>(LinearPencil<Rational>(ring, {a0, a1, a2}), f, 2));
  auto minus = fixtures::verified(CliffordRep<Rational>(LinearPencil<Rational>(ring, {a0, a1, m2}), f, 2));
  const auto r = equivalence_test(plus, minus);
  CHECK(r.verdict == EquivalenceVerdict::Inequivalent);
  CHECK(r.basis.empty());
  CHECK(hom_space_dim(plus, minus) == 0);
  CHECK(equivalence_test(plus, plus).verdict == EquivalenceVerdict::Equivalent);
}

TEST_CASE("clock-shift reps with rotated roots are equivalent") {
  auto c = fixtures::clock_shift(11, {1, 10});
  auto d = fixtures::clock_shift(11, {10, 1});
  CHECK(equivalence_test(c, d).verdict == EquivalenceVerdict::Equivalent);
}

TEST_CASE("direct_sum and twist examples") {
  auto h = hyperplane_23();
  verify_relation(h);
  const auto hh = direct_sum(h, h);
  CHECK(hh.size() == 2);
  CHECK(hh.clifford_index() == 2);
  CHECK(hh.pencil().coefficient(0)(0, 1).is_zero());

  auto block = fixtures::block_quadric();
  const auto bb = direct_sum(block, block);
  CHECK(bb.size() == 8);
  CHECK(bb.clifford_index() == 4);

  const RingPtr ring = make_ring(FieldSpec::rationals(), 0, 2);
  auto other = fixtures::verified(hyperplane_rep(P::y(ring, 0)));
  CHECK_THROWS_AS(direct_sum(h, other), Error);

  const auto t1 = twist_by_free(block, 1);
  CHECK(t1.pencil() == block.pencil());
  const auto t3 = twist_by_free(block, 3);
  CHECK(t3.size() == 12);
  CHECK(t3.clifford_index() == 6);
}

TEST_CASE("hom_space_dim examples") {
  auto block = fixtures::block_quadric();
  CHECK(hom_space_dim(block, block) == 1);
  CHECK(hom_space_dim(twist_by_free(block, 2), twist_by_free(block, 3)) == 6);
  CHECK(hom_space_dim(block, direct_sum(block, block)) == 2);
}

TEST_CASE("irreducibility examples") {
  auto block = fixtures::block_quadric();
  const auto r = irreducibility_check(block);
  CHECK(r.verdict == IrreducibilityVerdict::Irreducible);
  CHECK(r.algebra_dim == 16);

  auto cs = fixtures::clock_shift(7, {1, 2, 4});
  const auto rc = irreducibility_check(cs);
  CHECK(rc.verdict == IrreducibilityVerdict::Irreducible);
  CHECK(rc.algebra_dim == 9);

  const auto sum = direct_sum(block, block);
  const auto rs = irreducibility_check(sum);
  CHECK(rs.verdict == IrreducibilityVerdict::Reducible);
  // the returned subspace is invariant under every generator
  const FieldSpec qq = FieldSpec::rationals();
  const Eigen::Index k = rank(rs.subspace, qq);
  CHECK(k > 0);
  CHECK(k < 8);
  for (const auto& a : sum.pencil().coefficients()) {
    Mat<Rational> joined(8, rs.subspace.cols() * 2);
    joined << rs.subspace, Mat<Rational>(to_scalar(a, qq) * rs.subspace);
    CHECK(rank(joined, qq) == k);
  }
}

TEST_CASE("verified reps have d | t and det = c f^(t/d)") {
  std::vector<CliffordRep<ModP>> reps{fixtures::clock_shift(7, {1, 2, 4}), fixtures::clock_shift(13, {1, 5, 8, 12}),
                                      fixtures::block_quadric<ModP>(FieldSpec::prime(7))};
  reps.push_back(direct_sum(reps[0], reps[0]));
  reps.push_back(twist_by_free(reps[2], 2));
  for (auto& rep : reps) {
    CHECK(rep.size() % rep.degree() == 0);
    const auto fac = det_factorization(rep);
    CHECK(fac.exponent == rep.size() / rep.degree());
    CHECK_FALSE(fac.unit.is_zero());
    // exact equality det M = c * f^r
    Poly<ModP> pw = Poly<ModP>::constant(rep.ring(), fac.unit);
    for (unsigned k = 0; k < fac.exponent; ++k) pw = pw * rep.form();
    CHECK(det(assemble(rep.pencil())) == pw);
  }
}

TEST_CASE("equivalence is an equivalence relation on conjugates") {
  const FieldSpec f = FieldSpec::prime(7);
  auto base = fixtures::block_quadric<ModP>(f);
  std::mt19937_64 rng(21);
  for (int k = 0; k < 5; ++k) {
    auto a = fixtures::verified(conjugate(base, random_invertible<ModP>(f, 4, rng)));
    auto b = fixtures::verified(conjugate(base, random_invertible<ModP>(f, 4, rng)));
    auto c = fixtures::verified(conjugate(base, random_invertible<ModP>(f, 4, rng)));
    const auto aa = equivalence_test(a, a);
    CHECK(aa.verdict == EquivalenceVerdict::Equivalent);
    const auto ab = equivalence_test(a, b), ba = equivalence_test(b, a);
    CHECK(ab.verdict == EquivalenceVerdict::Equivalent);
    CHECK(ba.verdict == EquivalenceVerdict::Equivalent);
    const auto bc = equivalence_test(b, c), ac = equivalence_test(a, c);
    CHECK(bc.verdict == EquivalenceVerdict::Equivalent);
    CHECK(ac.verdict == EquivalenceVerdict::Equivalent);
    REQUIRE(ab.theta);
    REQUIRE(bc.theta);
    // composing the witnesses gives a witness for a ~ c
    const PolyMatrix<ModP> comp = multiply(*bc.theta, *ab.theta);
    CHECK(intertwines(comp, a.pencil(), c.pencil()));
    CHECK(is_unit_matrix(comp, a.ring()));
  }
}

TEST_CASE("conjugation preserves the relation") {
  std::mt19937_64 rng(4);
  for (const FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(7)}) {
    with_field(f, [&]<class S>() {
      auto base = fixtures::block_quadric<S>(f);
      for (int k = 0; k < 20; ++k) {
        auto conj = conjugate(base, random_invertible<S>(f, 4, rng));
        CHECK(verify_relation(conj).pass);
        CHECK(equivalence_test(base, conj).verdict == EquivalenceVerdict::Equivalent);
      }
    });
  }
}

TEST_CASE("Hom dimension of free twists is m1*m2") {
  auto block = fixtures::block_quadric<ModP>(FieldSpec::prime(7));
  REQUIRE(hom_space_dim(block, block) == 1);
  for (unsigned m1 = 1; m1 <= 4; ++m1)
    for (unsigned m2 = 1; m2 <= 4; ++m2)
      CHECK(hom_space_dim(twist_by_free(block, m1), twist_by_free(block, m2)) == m1 * m2);
}

TEST_CASE("base change commutes with verification") {
  const RingPtr ring = make_ring(FieldSpec::rationals(), 1, 2);
  const P f = P::t(ring, 1) * P::y(ring, 0) + P::y(ring, 1);
  auto rep = hyperplane_rep(f);
  CHECK(verify_relation(rep).pass);
  std::mt19937_64 rng(12);
  for (int k = 0; k < 10; ++k) {
    const std::vector<Rational> pt{FieldTraits<Rational>::random(ring->field(), rng, 20)};
    CliffordRep<Rational> sp(specialize(rep.pencil(), pt), specialize(f, fiber_ring(ring), pt), 1);
    CHECK(verify_relation(sp).pass);
  }
}

TEST_CASE("equivalence over a base ring") {
  const auto q = fixtures::quadric<Rational>(FieldSpec::rationals(), 1);
  auto rep = fixtures::verified(block_from_mf(MFPair<Rational>{q.ring, q.phi, q.psi, q.f}));
  // conjugate by a t-dependent unimodular matrix
  PolyMatrix<Rational> theta = poly_identity<Rational>(q.ring, 4);
  theta(0, 1) = P::t(q.ring, 1);
  PolyMatrix<Rational> theta_inv = poly_identity<Rational>(q.ring, 4);
  theta_inv(0, 1) = -P::t(q.ring, 1);
  std::vector<PolyMatrix<Rational>> coeffs;
  for (const auto& a : rep.pencil().coefficients()) coeffs.push_back(multiply(multiply(theta, a), theta_inv));
  CliffordRep<Rational> conj(LinearPencil<Rational>(q.ring, coeffs), q.f, 2);
  REQUIRE(verify_relation(conj).pass);
  const auto r = equivalence_test(rep, conj);
  CHECK(r.verdict == EquivalenceVerdict::Equivalent);
  REQUIRE(r.theta);
  CHECK(intertwines(*r.theta, rep.pencil(), conj.pencil()));
  CHECK(is_unit_matrix(*r.theta, q.ring));
}
