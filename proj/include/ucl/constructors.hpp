#ifndef UCL_CONSTRUCTORS_HPP
#define UCL_CONSTRUCTORS_HPP

// Canonical representations: hyperplanes, split binary forms (clock-shift),
// diagonal quadrics (gamma matrices), block lifts of matrix factorizations,
// and a seeded brute-force search over small prime fields.
//
// None of these mark their output verified; callers run verify_relation.

#include <algorithm>
#include <set>
#include <thread>

#include "ucl/clifford.hpp"

namespace ucl {

inline constexpr const char* kNonReducedFlag = "non-reduced-form";

/// The 1x1 representation A_i = [coefficient of y_i in f] of a linear form.
template <class S>
CliffordRep<S> hyperplane_rep(const Poly<S>& f) {
  const RingPtr ring = f.ring();
  if (!ring || f.is_zero() || !f.is_y_homogeneous(1))
    throw Error(ErrorCode::NotHomogeneous, "hyperplane form must be nonzero and y-linear");
  PolyMatrix<S> m(1, 1);
  m(0, 0) = f;
  return CliffordRep<S>(extract(m, ring), f, 1);
}

template <class S>
struct SplitBinaryForm {
  RingPtr ring;
  std::vector<S> roots;
  Poly<S> f;  // prod_j (y0 + c_j y1)
};

template <class S>
SplitBinaryForm<S> make_split_binary_form(const RingPtr& ring, std::vector<S> roots) {
  if (ring->fiber_vars() != 2) throw Error(ErrorCode::InvalidArgument, "binary forms need exactly two fiber variables");
  if (roots.empty()) throw Error(ErrorCode::InvalidArgument, "at least one root is required");
  Poly<S> f = Poly<S>::constant(ring, FieldTraits<S>::from_int(ring->field(), 1));
  for (auto& c : roots) {
    c = FieldTraits<S>::bind(c, ring->field());
    f *= Poly<S>::y(ring, 0) + Poly<S>::y(ring, 1).scaled(c);
  }
  return SplitBinaryForm<S>{ring, std::move(roots), std::move(f)};
}

/// M = P * (y0 I + y1 D), D = diag(c_1..c_d), P the cyclic shift e_j -> e_{j+1}.
/// Repeated roots are allowed and flagged as a non-reduced form.
template <class S>
CliffordRep<S> clock_shift_rep(const SplitBinaryForm<S>& form) {
  const auto d = static_cast<Eigen::Index>(form.roots.size());
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "clock-shift construction needs degree at least 2");
  const RingPtr& ring = form.ring;
  const FieldSpec& field = ring->field();
  PolyMatrix<S> shift = poly_zero<S>(ring, d, d), shifted_clock = poly_zero<S>(ring, d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = Poly<S>::constant(ring, FieldTraits<S>::from_int(field, 1));
    shifted_clock((j + 1) % d, j) = Poly<S>::constant(ring, form.roots[static_cast<std::size_t>(j)]);
  }
  std::vector<std::string> flags;
  auto sorted = form.roots;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) flags.push_back(kNonReducedFlag);
  return CliffordRep<S>(LinearPencil<S>(ring, {shift, shifted_clock}), form.f, static_cast<unsigned>(d),
                        std::move(flags));
}

namespace detail {

/// alpha, beta with alpha^2 - a beta^2 = b, by bounded search.
template <class S>
bool solve_norm(const S& a, const S& b, const FieldSpec& field, S& alpha, S& beta);

template <>
inline bool solve_norm<ModP>(const ModP& a, const ModP& b, const FieldSpec& field, ModP& alpha, ModP& beta) {
  const std::uint64_t p = field.modulus();
  const std::uint64_t limit = std::min<std::uint64_t>(p, 100000);
  for (std::uint64_t k = 0; k < limit; ++k) {
    const ModP bt(k, p);
    ModP root;
    if (sqrt_mod(b + a * bt * bt, root)) {
      alpha = root;
      beta = bt;
      return true;
    }
  }
  return false;
}

template <>
inline bool solve_norm<Rational>(const Rational& a, const Rational& b, const FieldSpec&, Rational& alpha,
                                 Rational& beta) {
  for (long den = 1; den <= 12; ++den) {
    for (long num = 0; num <= 24; ++num) {
      for (int sign : {1, -1}) {
        if (num == 0 && sign < 0) continue;
        const Rational bt(mpq_class(sign * num, den));
        Rational root;
        if (sqrt_rational(b + a * bt * bt, root)) {
          alpha = root;
          beta = bt;
          return true;
        }
      }
    }
  }
  return false;
}

template <class S>
Mat<S> small(const FieldSpec& field, long long a, long long b, long long c, long long d) {
  Mat<S> m(2, 2);
  m << FieldTraits<S>::from_int(field, a), FieldTraits<S>::from_int(field, b), FieldTraits<S>::from_int(field, c),
      FieldTraits<S>::from_int(field, d);
  return m;
}

}  // namespace detail

/// Pairwise anticommuting matrices Gamma_i with Gamma_i^2 = a_i I, built as
/// tensor products of 2x2 blocks without extracting square roots. Two
/// generators share a block whenever the needed norm equation has a solution
/// in the field (always over GF(p)); otherwise a generator gets its own block.
template <class S>
std::vector<Mat<S>> gamma_matrices(const std::vector<S>& coeffs, const FieldSpec& field) {
  if (field.characteristic() == 2) throw Error(ErrorCode::InvalidArgument, "gamma construction needs characteristic != 2");
  for (const auto& a : coeffs)
    if (is_zero(FieldTraits<S>::bind(a, field))) throw Error(ErrorCode::InvalidArgument, "quadric coefficients must be nonzero");
  const S one = FieldTraits<S>::from_int(field, 1);
  const S zero = FieldTraits<S>::from_int(field, 0);

  // Each factor: the 2x2 blocks of its generators and the chain element that
  // anticommutes with them (placed in this slot for all later generators).
  struct Factor {
    std::vector<std::pair<std::size_t, Mat<S>>> gens;
    Mat<S> chain;
  };
  std::vector<Factor> factors;
  S chain_scale = one;  // product of the squares of earlier chain elements
  for (std::size_t i = 0; i < coeffs.size();) {
    const S a = FieldTraits<S>::bind(coeffs[i], field) / chain_scale;
    Mat<S> x = detail::small<S>(field, 0, 0, 1, 0);
    x(0, 1) = a;  // x^2 = a
    Factor fac;
    fac.gens.emplace_back(i, x);
    if (i + 1 < coeffs.size()) {
      const S b = FieldTraits<S>::bind(coeffs[i + 1], field) / chain_scale;
      S alpha, beta;
      if (detail::solve_norm(a, b, field, alpha, beta)) {
        // w anticommutes with x and w^2 = (alpha^2 - a beta^2) I = b I
        Mat<S> w(2, 2);
        w << alpha, -(a * beta), beta, -alpha;
        fac.gens.emplace_back(i + 1, w);
        fac.chain = x * w;  // (xw)^2 = -ab I
        chain_scale *= -(a * b);
        factors.push_back(std::move(fac));
        i += 2;
        continue;
      }
    }
    fac.chain = detail::small<S>(field, 1, 0, 0, -1);
    factors.push_back(std::move(fac));
    i += 1;
  }
  std::vector<Mat<S>> out(coeffs.size());
  const Mat<S> id2 = detail::small<S>(field, 1, 0, 0, 1);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    for (const auto& [index, block] : factors[k].gens) {
      Mat<S> g = identity<S>(1, field);
      for (std::size_t l = 0; l < factors.size(); ++l) {
        const Mat<S>& piece = l < k ? factors[l].chain : (l == k ? block : id2);
        g = bind(kron(g, piece), field);
      }
      out[index] = std::move(g);
    }
  }
  (void)zero;
  return out;
}

/// Representation of the diagonal quadric f = sum_i a_i y_i^2 (d = 2).
template <class S>
CliffordRep<S> gamma_quadric_rep(const RingPtr& ring, const std::vector<S>& coeffs) {
  if (coeffs.size() != ring->fiber_vars())
    throw Error(ErrorCode::InvalidArgument, "need one coefficient per fiber variable");
  const auto gammas = gamma_matrices(coeffs, ring->field());
  std::vector<PolyMatrix<S>> pencil;
  Poly<S> f(ring);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    pencil.push_back(to_poly(gammas[i], ring));
    f += (Poly<S>::y(ring, i) * Poly<S>::y(ring, i)).scaled(FieldTraits<S>::bind(coeffs[i], ring->field()));
  }
  return CliffordRep<S>(LinearPencil<S>(ring, std::move(pencil)), f, 2);
}

/// Same, reading the coefficients off a diagonal quadratic form.
template <class S>
CliffordRep<S> gamma_quadric_rep(const Poly<S>& f) {
  const RingPtr ring = f.ring();
  if (!ring || !f.is_y_homogeneous(2) || f.is_zero())
    throw Error(ErrorCode::NotHomogeneous, "expected a nonzero quadratic form");
  if (f.involves_base_vars()) throw Error(ErrorCode::NondiagonalInput, "quadric must have constant coefficients");
  std::vector<S> coeffs(ring->fiber_vars(), FieldTraits<S>::from_int(ring->field(), 0));
  for (const auto& term : f.terms()) {
    std::size_t var = 0;
    while (term.mono.exp[var] == 0) ++var;
    if (term.mono.exp[var] != 2) throw Error(ErrorCode::NondiagonalInput, "quadric has a mixed term; use block_from_mf");
    coeffs[var] = term.coeff;
  }
  return gamma_quadric_rep(ring, coeffs);
}

/// [[0, phi], [psi, 0]] for a verified linear matrix factorization (d = 2).
template <class S>
CliffordRep<S> block_from_mf(const MFPair<S>& pair) {
  if (!mf_verify(pair).pass) throw Error(ErrorCode::UnverifiedInput, "phi and psi do not form a matrix factorization of f");
  const Eigen::Index t = pair.phi.rows();
  PolyMatrix<S> m = poly_zero<S>(pair.ring, 2 * t, 2 * t);
  m.topRightCorner(t, t) = in_ring(pair.phi, pair.ring);
  m.bottomLeftCorner(t, t) = in_ring(pair.psi, pair.ring);
  return CliffordRep<S>(extract(m, pair.ring), pair.f, 2);
}

class RotationMismatch : public Error {
 public:
  explicit RotationMismatch(std::size_t index)
      : Error(ErrorCode::RotationMismatch, "cyclic product starting at factor " + std::to_string(index) + " is not f*I"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Block-cyclic pencil with M_k in block (k, k+1 mod d); requires every
/// cyclic product M_k M_{k+1} ... M_{k-1} to equal f * I.
template <class S>
CliffordRep<S> cyclic_block_rep(const RingPtr& ring, const std::vector<PolyMatrix<S>>& factors, const Poly<S>& f) {
  const std::size_t d = factors.size();
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "need at least one factor");
  const Eigen::Index t = factors.front().rows();
  for (const auto& m : factors)
    if (m.rows() != t || m.cols() != t) throw Error(ErrorCode::ShapeMismatch, "factors must be square of one size");
  const PolyMatrix<S> target = [&] {
    PolyMatrix<S> id = poly_identity<S>(ring, t);
    for (Eigen::Index i = 0; i < t; ++i) id(i, i) = f.in_ring(ring);
    return id;
  }();
  for (std::size_t k = 0; k < d; ++k) {
    PolyMatrix<S> prod = in_ring(factors[k], ring);
    for (std::size_t s = 1; s < d; ++s) prod = multiply(prod, factors[(k + s) % d]);
    if (!equal(in_ring(prod, ring), target)) throw RotationMismatch(k);
  }
  const auto n = static_cast<Eigen::Index>(d);
  PolyMatrix<S> m = poly_zero<S>(ring, n * t, n * t);
  for (Eigen::Index k = 0; k < n; ++k) m.block(k * t, ((k + 1) % n) * t, t, t) = in_ring(factors[static_cast<std::size_t>(k)], ring);
  return CliffordRep<S>(extract(m, ring), f, static_cast<unsigned>(d));
}

// ---------------------------------------------------------------------------

struct SearchOptions {
  std::uint64_t seed = 0;
  std::uint64_t budget = 100000;
  unsigned threads = 1;
  unsigned dedup_trials = 16;
};

template <class S>
struct SearchResult {
  std::vector<CliffordRep<S>> reps;
  std::vector<bool> inconclusive;  // kept although equivalence to an earlier hit was undecided
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;          // samples passing the symbolic relation
  std::uint64_t distinct_pencils = 0;
};

namespace detail {

template <class S>
std::string pencil_key(const LinearPencil<S>& p) {
  std::string key;
  for (const auto& a : p.coefficients())
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) key += to_string(a(i, j)) + ",";
  return key;
}

}  // namespace detail

/// Samples pencils with uniformly random GF(p) entries and keeps those with
/// M(y)^d = f * I, deduplicated up to equivalence. Sample i draws from its
/// own stream of `seed`, so the result does not depend on the thread count.
template <class S>
SearchResult<S> random_search(const RingPtr& ring, const Poly<S>& f, unsigned d, Eigen::Index t,
                              const SearchOptions& opts = {}) {
  if (!ring->field().is_prime_field()) throw Error(ErrorCode::Unsupported, "random search runs over prime fields only");
  if (ring->base_vars() != 0) throw Error(ErrorCode::Unsupported, "random search needs a ring without base variables");
  if (d < 1 || t < 1 || t % static_cast<Eigen::Index>(d) != 0)
    throw Error(ErrorCode::InvalidArgument, "size t must be a positive multiple of d");
  const Poly<S> form = f.in_ring(ring);
  if (form.is_zero() || !form.is_y_homogeneous(d)) throw Error(ErrorCode::NotHomogeneous, "f must be y-homogeneous of degree d");
  const FieldSpec& field = ring->field();
  const std::size_t nv = ring->fiber_vars();

  auto sample = [&](std::uint64_t index) -> std::optional<CliffordRep<S>> {
    auto rng = seeded_rng(opts.seed, index);
    std::vector<Mat<S>> gens;
    for (std::size_t g = 0; g < nv; ++g) {
      Mat<S> a(t, t);
      for (Eigen::Index i = 0; i < t; ++i)
        for (Eigen::Index j = 0; j < t; ++j) a(i, j) = FieldTraits<S>::random(field, rng);
      gens.push_back(std::move(a));
    }
    // cheap necessary condition at two random points before the symbolic check
    for (int probe = 0; probe < 2; ++probe) {
      std::vector<S> pt;
      for (std::size_t g = 0; g < nv; ++g) pt.push_back(FieldTraits<S>::random(field, rng));
      Mat<S> m = gens[0] * pt[0];
      for (std::size_t g = 1; g < nv; ++g) m += gens[g] * pt[g];
      Mat<S> pw = m;
      for (unsigned k = 1; k < d; ++k) pw = pw * m;
      const S fv = form.evaluate(pt);
      for (Eigen::Index i = 0; i < t; ++i)
        for (Eigen::Index j = 0; j < t; ++j)
          if (pw(i, j) != (i == j ? fv : FieldTraits<S>::from_int(field, 0))) return std::nullopt;
    }
    std::vector<PolyMatrix<S>> coeffs;
    for (const auto& g : gens) coeffs.push_back(to_poly(g, ring));
    CliffordRep<S> rep(LinearPencil<S>(ring, std::move(coeffs)), form, d);
    if (!verify_relation(rep).pass) return std::nullopt;
    return rep;
  };

  const unsigned threads = std::max(1u, opts.threads);
  std::vector<std::vector<std::pair<std::uint64_t, CliffordRep<S>>>> found(threads);
  {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t i = w; i < opts.budget; i += threads)
          if (auto rep = sample(i)) found[w].emplace_back(i, std::move(*rep));
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<std::pair<std::uint64_t, CliffordRep<S>>> hits;
  for (auto& part : found)
    for (auto& h : part) hits.push_back(std::move(h));
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  SearchResult<S> res;
  res.samples = opts.budget;
  res.hits = hits.size();
  std::set<std::string> seen;
  EquivalenceOptions eq;
  eq.seed = opts.seed;
  eq.trials = opts.dedup_trials;
  for (auto& [index, rep] : hits) {
    if (!seen.insert(detail::pencil_key(rep.pencil())).second) continue;
    ++res.distinct_pencils;
    bool duplicate = false, undecided = false;
    for (const auto& kept : res.reps) {
      const auto v = equivalence_test(kept, rep, eq).verdict;
      if (v == EquivalenceVerdict::Equivalent) {
        duplicate = true;
        break;
      }
      if (v == EquivalenceVerdict::Inconclusive) undecided = true;
    }
    if (duplicate) continue;
    res.reps.push_back(std::move(rep));
    res.inconclusive.push_back(undecided);
  }
  return res;
}

}  // namespace ucl

#endif  // UCL_CONSTRUCTORS_HPP
