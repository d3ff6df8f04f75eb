#ifndef UCL_ULRICH_HPP
#define UCL_ULRICH_HPP

// Certification of the cokernel of M(y) as an Ulrich sheaf on the fibers of
// the hypersurface f = 0: Hilbert function of the graded cokernel, number of
// sections, fiber corank at sampled points, smoothness sampling, and the
// Fitting exponent.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ucl/cohomology.hpp"
#include "ucl/clifford.hpp"

namespace ucl {

struct GradedCokernel {
  Eigen::Index size = 0;
  std::size_t n = 0;                   // fiber variables minus one
  std::vector<std::uint64_t> hilbert;  // HF(0..E)
};

namespace detail {

inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial m;
  // enumerate compositions of `degree` into nvars parts
  auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
    if (var + 1 == nvars) {
      m.exp[var] = static_cast<std::uint16_t>(left);
      out.push_back(m);
      m.exp[var] = 0;
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      m.exp[var] = static_cast<std::uint16_t>(e);
      self(self, var + 1, left - e);
    }
    m.exp[var] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.exp < b.exp; }
};

}  // namespace detail

/// t * C(e+n-1, n-1) for e = 0..E, the Hilbert function forced by an exact
/// linear resolution 0 -> S(-1)^t -> S^t -> F -> 0 over k[y0..yn].
std::vector<std::uint64_t> expected_hilbert(std::uint64_t t, std::size_t n, unsigned max_degree);

/// HF(e) = t * C(n+e, n) - rank(M_e) with M_e : S_{e-1}^t -> S_e^t.
template <class S>
GradedCokernel hilbert_function(const PolyMatrix<S>& m, const RingPtr& ring, unsigned max_degree) {
  if (ring->base_vars() != 0) throw Error(ErrorCode::Unsupported, "Hilbert function needs a ring without base variables");
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "Hilbert function needs a square matrix");
  const Eigen::Index t = m.rows();
  for (Eigen::Index i = 0; i < t; ++i)
    for (Eigen::Index j = 0; j < t; ++j)
      if (!m(i, j).in_ring(ring).is_y_homogeneous(1))
        throw NonLinearEntry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  if (det(m).is_zero()) throw Error(ErrorCode::Degenerate, "det M(y) = 0: the linear resolution is not exact");
  const FieldSpec& field = ring->field();
  const std::size_t nv = ring->fiber_vars();
  const LinearPencil<S> pencil = extract(m, ring);
  std::vector<Mat<S>> gens;
  for (const auto& a : pencil.coefficients()) gens.push_back(to_scalar(a, field));

  GradedCokernel out;
  out.size = t;
  out.n = nv - 1;
  out.hilbert.push_back(static_cast<std::uint64_t>(t));
  for (unsigned e = 1; e <= max_degree; ++e) {
    const auto target = detail::monomials_of_degree(nv, e);
    const auto source = detail::monomials_of_degree(nv, e - 1);
    std::map<Monomial, Eigen::Index, detail::MonomialLess> index;
    for (std::size_t k = 0; k < target.size(); ++k) index.emplace(target[k], static_cast<Eigen::Index>(k));
    const auto nt = static_cast<Eigen::Index>(target.size()), ns = static_cast<Eigen::Index>(source.size());
    Mat<S> mult(t * nt, t * ns);
    mult.fill(FieldTraits<S>::from_int(field, 0));
    for (Eigen::Index j = 0; j < t; ++j)
      for (Eigen::Index s = 0; s < ns; ++s)
        for (std::size_t v = 0; v < nv; ++v) {
          Monomial mono = source[static_cast<std::size_t>(s)];
          ++mono.exp[v];
          const Eigen::Index row_mono = index.at(mono);
          for (Eigen::Index i = 0; i < t; ++i) {
            const S& c = gens[v](i, j);
            if (!is_zero(c)) mult(i * nt + row_mono, j * ns + s) += c;
          }
        }
    const Eigen::Index rk = rank(mult, field);
    out.hilbert.push_back(static_cast<std::uint64_t>(t * nt - rk));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SamplingOptions {
  std::uint64_t prime = 101;        // used when the representation is over QQ
  std::size_t on_points = 50;       // target number of on-hypersurface points
  std::size_t off_points = 50;
  std::size_t min_points = 20;      // fewer smooth/off witnesses than this fails the check
  std::size_t max_attempts = 20000;
  std::uint64_t seed = 0;
};

struct CorankSummary {
  std::uint64_t prime = 0;
  std::size_t expected_corank = 0;  // r
  std::size_t attempts = 0;
  std::size_t on_points = 0;
  std::size_t smooth_points = 0;
  std::size_t singular_points = 0;
  std::size_t off_points = 0;
  std::map<Eigen::Index, std::size_t> smooth_histogram;    // corank -> count
  std::map<Eigen::Index, std::size_t> singular_histogram;
  std::map<Eigen::Index, std::size_t> off_histogram;
  std::vector<std::string> violations;  // witness points with the wrong corank
  std::string singular_witness;
  std::size_t min_points = 0;

  bool corank_ok() const {
    return violations.empty() && smooth_points >= min_points && off_points >= min_points;
  }
  bool smooth_ok() const { return singular_points == 0 && smooth_points >= min_points; }
};

namespace detail {

inline ModP reduce_rational(const Rational& q, std::uint64_t p) {
  const FieldSpec f = FieldSpec::prime(p);
  const ModP num = FieldTraits<ModP>::parse(f, q.value().get_num().get_str(), "");
  const ModP den = FieldTraits<ModP>::parse(f, q.value().get_den().get_str(), "");
  if (den.is_zero()) throw Error(ErrorCode::BadPrime, "prime " + std::to_string(p) + " divides a denominator");
  return num / den;
}

template <class S>
struct Reduced {
  RingPtr ring;
  LinearPencil<ModP> pencil;
  Poly<ModP> form;
};

template <class S>
Reduced<S> reduce_mod_p(const LinearPencil<S>& pencil, const Poly<S>& form, std::uint64_t prime) {
  if constexpr (std::is_same_v<S, ModP>) {
    return Reduced<S>{pencil.ring(), pencil, form};
  } else {
    const RingPtr src = pencil.ring();
    const RingPtr ring = make_ring(FieldSpec::prime(prime), src->base_vars(), src->fiber_vars());
    auto red = [&](const Rational& q) { return reduce_rational(q, prime); };
    std::vector<PolyMatrix<ModP>> coeffs;
    for (const auto& a : pencil.coefficients()) {
      PolyMatrix<ModP> b(a.rows(), a.cols());
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) b(i, j) = a(i, j).template map_coefficients<ModP>(ring, red);
      coeffs.push_back(std::move(b));
    }
    return Reduced<S>{ring, LinearPencil<ModP>(ring, std::move(coeffs)), form.template map_coefficients<ModP>(ring, red)};
  }
}

inline std::string point_string(const std::vector<ModP>& pt) {
  std::string s = "(";
  for (std::size_t k = 0; k < pt.size(); ++k) s += (k ? "," : "") + std::to_string(pt[k].residue());
  return s + ")";
}

}  // namespace detail

/// Samples points of P^n over GF(p): off the hypersurface the corank of M
/// must be 0; at smooth points of f = 0 it must equal r. Points on f = 0
/// come from fixing all but one coordinate and scanning the roots of the
/// univariate slice. Rational representations are reduced modulo
/// `opts.prime`; a prime that kills a denominator or det M is rejected.
template <class S>
CorankSummary corank_sampling(const CliffordRep<S>& rep, const SamplingOptions& opts = {}) {
  if (rep.ring()->base_vars() != 0)
    throw Error(ErrorCode::Unsupported, "corank sampling needs a representation without base variables; specialize first");
  const std::size_t r = rep.clifford_index();
  const std::uint64_t prime = rep.field().is_prime_field() ? rep.field().modulus() : opts.prime;
  if (prime > 100000) throw Error(ErrorCode::Unsupported, "root scanning needs p <= 100000");
  const auto red = detail::reduce_mod_p(rep.pencil(), rep.form(), prime);
  if (det(assemble(red.pencil)).is_zero())
    throw Error(ErrorCode::BadPrime, "det M(y) vanishes modulo " + std::to_string(prime));
  const FieldSpec field = red.ring->field();
  const std::size_t nv = red.ring->fiber_vars();
  const Eigen::Index t = rep.size();
  std::vector<Mat<ModP>> gens;
  for (const auto& a : red.pencil.coefficients()) gens.push_back(to_scalar(a, field));
  std::vector<Poly<ModP>> grad;
  for (std::size_t v = 0; v < nv; ++v) grad.push_back(red.form.derivative(v));

  CorankSummary sum;
  sum.prime = prime;
  sum.expected_corank = r;
  sum.min_points = opts.min_points;
  auto rng = seeded_rng(opts.seed, 0x434f524bull);
  auto corank_at = [&](const std::vector<ModP>& pt) {
    Mat<ModP> m = gens[0] * pt[0];
    for (std::size_t v = 1; v < nv; ++v) m += gens[v] * pt[v];
    return t - rank(m, field);
  };
  auto nonzero = [](const std::vector<ModP>& pt) {
    return std::any_of(pt.begin(), pt.end(), [](const ModP& x) { return !x.is_zero(); });
  };

  while (sum.off_points < opts.off_points && sum.attempts < opts.max_attempts) {
    ++sum.attempts;
    std::vector<ModP> pt;
    for (std::size_t v = 0; v < nv; ++v) pt.push_back(FieldTraits<ModP>::random(field, rng));
    if (!nonzero(pt) || red.form.evaluate(pt).is_zero()) continue;
    ++sum.off_points;
    const Eigen::Index c = corank_at(pt);
    ++sum.off_histogram[c];
    if (c != 0) sum.violations.push_back("off " + detail::point_string(pt) + " corank " + std::to_string(c));
  }

  std::uniform_int_distribution<std::size_t> pick_var(0, nv - 1);
  while (sum.on_points < opts.on_points && sum.attempts < opts.max_attempts) {
    ++sum.attempts;
    std::vector<ModP> pt;
    for (std::size_t v = 0; v < nv; ++v) pt.push_back(FieldTraits<ModP>::random(field, rng));
    const std::size_t free_var = pick_var(rng);
    std::vector<ModP> roots;
    for (std::uint64_t x = 0; x < prime; ++x) {
      pt[free_var] = ModP(x, prime);
      if (red.form.evaluate(pt).is_zero()) roots.push_back(pt[free_var]);
    }
    if (roots.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick_root(0, roots.size() - 1);
    pt[free_var] = roots[pick_root(rng)];
    if (!nonzero(pt)) continue;
    ++sum.on_points;
    const bool smooth = std::any_of(grad.begin(), grad.end(), [&](const Poly<ModP>& g) { return !g.evaluate(pt).is_zero(); });
    const Eigen::Index c = corank_at(pt);
    if (smooth) {
      ++sum.smooth_points;
      ++sum.smooth_histogram[c];
      if (c != static_cast<Eigen::Index>(r))
        sum.violations.push_back("on " + detail::point_string(pt) + " corank " + std::to_string(c));
    } else {
      ++sum.singular_points;
      ++sum.singular_histogram[c];
      if (sum.singular_witness.empty()) sum.singular_witness = detail::point_string(pt);
    }
  }
  if (sum.on_points < opts.min_points)
    throw Error(ErrorCode::TooFewPoints, "found only " + std::to_string(sum.on_points) +
                                             " points on the hypersurface within " + std::to_string(opts.max_attempts) +
                                             " attempts");
  return sum;
}

/// The exponent r with Fitt_0(coker M) = (det M) = (f^r); must equal t / d.
template <class S>
unsigned fitting_exponent(const CliffordRep<S>& rep) {
  const auto fac = det_factorization(rep);
  if (fac.exponent != rep.clifford_index())
    throw Error(ErrorCode::InternalInconsistency, "Fitting exponent differs from t/d");
  return fac.exponent;
}

// ---------------------------------------------------------------------------

struct UlrichConfig {
  unsigned max_degree = 6;
  SamplingOptions sampling;
  /// Base points (integers, one per t-variable) at which Hilbert function and
  /// corank checks run when the ring has base variables. Empty: two seeded
  /// random points.
  std::vector<std::vector<long long>> base_points;
  bool hilbert = true;
  bool corank = true;
};

struct UlrichCertificate {
  std::vector<Check> checks;
  bool pass = false;
  Eigen::Index size = 0;
  unsigned degree = 0;
  std::size_t index = 0;  // 0 when the relation fails
  std::vector<std::string> flags;
  std::vector<std::uint64_t> hilbert;  // at the first base point when m > 0
  std::optional<CorankSummary> corank;
};

namespace detail {

inline std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

inline std::string histogram(const std::map<Eigen::Index, std::size_t>& h) {
  std::string s;
  for (const auto& [c, n] : h) s += (s.empty() ? "" : ",") + std::to_string(c) + ":" + std::to_string(n);
  return s.empty() ? "-" : s;
}

template <class S>
Check failed_check(const std::string& name, const Error& e) {
  Check c{name, Status::Fail, e.what(), {}};
  c.witness.emplace_back("error", to_string(e.code()));
  return c;
}

}  // namespace detail

/// Runs relation, determinant, Hilbert function, h0 = dr, corank and
/// smoothness sampling. The verdict passes iff every enabled check passes.
template <class S>
UlrichCertificate ulrich_certificate(CliffordRep<S> rep, const UlrichConfig& config = {}) {
  UlrichCertificate cert;
  cert.size = rep.size();
  cert.degree = rep.degree();
  cert.flags = rep.flags();
  const RingPtr& ring = rep.ring();
  const FieldSpec& field = ring->field();

  const auto rel = verify_relation(rep);
  Check relation = rel.to_check();

  std::optional<DetFactorization<S>> fac;
  try {
    fac = det_factorization(rep, !rel.pass);
    Check c{"determinant", Status::Pass, "det M(y) = c * f^r", {}};
    c.witness.emplace_back("c", to_string(fac->unit));
    c.witness.emplace_back("r", std::to_string(fac->exponent));
    if (!rel.pass) relation.witness.emplace_back("status", "mf-only: det M = c*f^" + std::to_string(fac->exponent) +
                                                               " but M^d != f*I");
    cert.checks.push_back(relation);
    cert.checks.push_back(std::move(c));
  } catch (const Error& e) {
    cert.checks.push_back(relation);
    cert.checks.push_back(detail::failed_check<S>("determinant", e));
  }
  if (rel.pass) cert.index = rel.index;

  // fibers to examine
  std::vector<std::vector<S>> points;
  if (ring->base_vars() == 0) {
    points.emplace_back();
  } else if (!config.base_points.empty()) {
    for (const auto& bp : config.base_points) {
      std::vector<S> pt;
      for (auto v : bp) pt.push_back(FieldTraits<S>::from_int(field, v));
      points.push_back(std::move(pt));
    }
  } else {
    auto rng = seeded_rng(config.sampling.seed, 0x42415345ull);
    for (int k = 0; k < 2; ++k) {
      std::vector<S> pt;
      for (std::size_t j = 0; j < ring->base_vars(); ++j) pt.push_back(FieldTraits<S>::random(field, rng, 10));
      points.push_back(std::move(pt));
    }
  }
  auto fiber_rep = [&](const std::vector<S>& pt) {
    if (ring->base_vars() == 0) return rep;
    CliffordRep<S> f(specialize(rep.pencil(), pt), specialize(rep.form(), fiber_ring(ring), pt), rep.degree(), rep.flags());
    verify_relation(f);
    return f;
  };
  auto point_label = [&](const std::vector<S>& pt) {
    std::string s;
    for (std::size_t j = 0; j < pt.size(); ++j) s += (j ? "," : "") + ring->var_name(ring->t_index(j + 1)) + "=" + to_string(pt[j]);
    return s;
  };

  const std::size_t n = ring->fiber_vars() - 1;
  if (config.hilbert) {
    Check hc{"hilbert", Status::Pass, "HF(e) = t*C(e+n-1,n-1) for e <= " + std::to_string(config.max_degree), {}};
    Check h0{"h0", Status::Pass, "HF(0) = t = d*r", {}};
    try {
      for (const auto& pt : points) {
        const auto fr = fiber_rep(pt);
        const auto hf = hilbert_function(assemble(fr.pencil()), fr.ring(), config.max_degree);
        const auto want = expected_hilbert(static_cast<std::uint64_t>(rep.size()), n, config.max_degree);
        if (cert.hilbert.empty()) cert.hilbert = hf.hilbert;
        const std::string label = pt.empty() ? "hf" : "hf@" + point_label(pt);
        hc.witness.emplace_back(label, detail::join(hf.hilbert));
        if (hf.hilbert != want) {
          hc.status = Status::Fail;
          hc.witness.emplace_back("expected", detail::join(want));
        }
        if (hf.hilbert.front() != static_cast<std::uint64_t>(rep.size()) ||
            (rel.pass && hf.hilbert.front() != rep.degree() * rel.index))
          h0.status = Status::Fail;
      }
      h0.witness.emplace_back("h0", std::to_string(cert.hilbert.empty() ? 0 : cert.hilbert.front()));
      h0.witness.emplace_back("d*r", rel.pass ? std::to_string(rep.degree() * rel.index) : "n/a");
      cert.checks.push_back(std::move(hc));
      cert.checks.push_back(std::move(h0));
    } catch (const Error& e) {
      cert.checks.push_back(detail::failed_check<S>("hilbert", e));
      cert.checks.push_back(Check{"h0", Status::Skipped, "Hilbert function unavailable", {}});
    }
  }

  if (config.corank) {
    if (!rel.pass) {
      cert.checks.push_back(Check{"corank", Status::Skipped, "needs a verified representation", {}});
      cert.checks.push_back(Check{"smoothness", Status::Skipped, "needs a verified representation", {}});
    } else {
      try {
        const auto fr = fiber_rep(points.front());
        const auto summary = corank_sampling(fr, config.sampling);
        Check cc{"corank", summary.corank_ok() ? Status::Pass : Status::Fail,
                 "corank r at smooth points of f = 0, corank 0 off it (sampled over GF(" +
                     std::to_string(summary.prime) + "))", {}};
        if (!points.front().empty()) cc.witness.emplace_back("base_point", point_label(points.front()));
        cc.witness.emplace_back("r", std::to_string(summary.expected_corank));
        cc.witness.emplace_back("attempts", std::to_string(summary.attempts));
        cc.witness.emplace_back("on_hypersurface", std::to_string(summary.on_points));
        cc.witness.emplace_back("smooth", std::to_string(summary.smooth_points));
        cc.witness.emplace_back("off_hypersurface", std::to_string(summary.off_points));
        cc.witness.emplace_back("smooth_coranks", detail::histogram(summary.smooth_histogram));
        cc.witness.emplace_back("off_coranks", detail::histogram(summary.off_histogram));
        cc.witness.emplace_back("seed", std::to_string(config.sampling.seed));
        for (const auto& v : summary.violations) cc.witness.emplace_back("violation", v);
        Check sc{"smoothness", summary.smooth_ok() ? Status::Pass : Status::Fail,
                 "sampled: gradient of f nonzero at every sampled point of f = 0", {}};
        sc.witness.emplace_back("smooth", std::to_string(summary.smooth_points));
        sc.witness.emplace_back("singular", std::to_string(summary.singular_points));
        if (!summary.singular_witness.empty()) sc.witness.emplace_back("singular_point", summary.singular_witness);
        for (const auto& f : rep.flags()) sc.witness.emplace_back("flag", f);
        cert.corank = summary;
        cert.checks.push_back(std::move(cc));
        cert.checks.push_back(std::move(sc));
      } catch (const Error& e) {
        cert.checks.push_back(detail::failed_check<S>("corank", e));
        cert.checks.push_back(Check{"smoothness", Status::Skipped, "corank sampling failed", {}});
      }
    }
  }

  cert.pass = std::all_of(cert.checks.begin(), cert.checks.end(), [](const Check& c) { return c.status == Status::Pass; });
  return cert;
}

}  // namespace ucl

#endif  // UCL_ULRICH_HPP
