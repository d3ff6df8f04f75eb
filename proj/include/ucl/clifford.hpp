#ifndef UCL_CLIFFORD_HPP
#define UCL_CLIFFORD_HPP

// Linear representations of the generalized Clifford algebra of a form f of
// degree d: pencils with (sum_i y_i A_i)^d = f * I. Verification, the
// determinant identity det M = c * f^(t/d), equivalence, Hom spaces,
// irreducibility, direct sums and free twists.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ucl/check.hpp"
#include "ucl/linalg.hpp"
#include "ucl/pencil.hpp"

namespace ucl {

template <class S>
class CliffordRep;

template <class S>
struct RelationCertificate {
  bool pass = false;
  Eigen::Index size = 0;
  unsigned degree = 0;
  std::size_t index = 0;  // t / d, meaningful on pass
  Eigen::Index row = -1;  // first offending entry on failure
  Eigen::Index col = -1;
  Poly<S> actual;
  Poly<S> difference;  // actual - expected
  std::vector<std::string> flags;

  Check to_check() const {
    Check c{"relation", pass ? Status::Pass : Status::Fail, {}, {}};
    c.witness.emplace_back("t", std::to_string(size));
    c.witness.emplace_back("d", std::to_string(degree));
    if (pass) {
      c.detail = "M(y)^d = f*I holds symbolically";
      c.witness.emplace_back("r", std::to_string(index));
    } else {
      c.detail = "M(y)^d differs from f*I";
      c.witness.emplace_back("entry", "(" + std::to_string(row) + "," + std::to_string(col) + ")");
      c.witness.emplace_back("actual", to_string(actual));
      c.witness.emplace_back("difference", to_string(difference));
    }
    for (const auto& f : flags) c.witness.emplace_back("flag", f);
    return c;
  }
};

template <class S>
RelationCertificate<S> verify_relation(CliffordRep<S>& rep);

template <class S>
class CliffordRep {
 public:
  CliffordRep(LinearPencil<S> pencil, Poly<S> form, unsigned degree, std::vector<std::string> flags = {})
      : pencil_(std::move(pencil)), form_(form.in_ring(pencil_.ring())), degree_(degree), flags_(std::move(flags)) {
    if (degree_ < 1) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  }

  const LinearPencil<S>& pencil() const noexcept { return pencil_; }
  const Poly<S>& form() const noexcept { return form_; }
  unsigned degree() const noexcept { return degree_; }
  Eigen::Index size() const noexcept { return pencil_.size(); }
  const RingPtr& ring() const noexcept { return pencil_.ring(); }
  const FieldSpec& field() const noexcept { return pencil_.ring()->field(); }
  const std::vector<std::string>& flags() const noexcept { return flags_; }
  bool has_flag(const std::string& f) const { return std::find(flags_.begin(), flags_.end(), f) != flags_.end(); }

  bool verified() const noexcept { return verified_; }
  /// r = t / d; only available after a passing verify_relation.
  std::size_t clifford_index() const {
    if (!verified_) throw Error(ErrorCode::UnverifiedInput, "representation has not been verified");
    return index_;
  }

 private:
  friend RelationCertificate<S> verify_relation<S>(CliffordRep<S>& rep);

  LinearPencil<S> pencil_;
  Poly<S> form_;
  unsigned degree_;
  std::vector<std::string> flags_;
  bool verified_ = false;
  std::size_t index_ = 0;
};

/// Checks M(y)^d = f * I as a polynomial identity; on success marks the
/// representation verified and records r = t / d.
template <class S>
RelationCertificate<S> verify_relation(CliffordRep<S>& rep) {
  const unsigned d = rep.degree();
  if (rep.form().is_zero() || !rep.form().is_y_homogeneous(d))
    throw Error(ErrorCode::NotHomogeneous, "f must be nonzero and y-homogeneous of degree " + std::to_string(d));
  RelationCertificate<S> cert;
  cert.size = rep.size();
  cert.degree = d;
  cert.flags = rep.flags();
  const PolyMatrix<S> power = pencil_power(rep.pencil(), d);
  const Poly<S> zero(rep.ring());
  for (Eigen::Index i = 0; i < power.rows(); ++i) {
    for (Eigen::Index j = 0; j < power.cols(); ++j) {
      const Poly<S>& want = (i == j) ? rep.form() : zero;
      if (power(i, j) != want) {
        cert.row = i;
        cert.col = j;
        cert.actual = power(i, j);
        cert.difference = power(i, j) - want;
        rep.verified_ = false;
        return cert;
      }
    }
  }
  if (rep.size() % static_cast<Eigen::Index>(d) != 0)
    throw Error(ErrorCode::InternalInconsistency, "relation holds but d does not divide t");
  cert.pass = true;
  cert.index = static_cast<std::size_t>(rep.size() / static_cast<Eigen::Index>(d));
  rep.verified_ = true;
  rep.index_ = cert.index;
  return cert;
}

// ---------------------------------------------------------------------------

template <class S>
struct DetFactorization {
  Poly<S> det;
  S unit;
  unsigned exponent = 0;
};

/// det M(y) = c * f^r with c a nonzero constant. Requires a verified
/// representation unless `force`; for verified input r must equal t / d.
template <class S>
DetFactorization<S> det_factorization(const CliffordRep<S>& rep, bool force = false) {
  if (!rep.verified() && !force)
    throw Error(ErrorCode::UnverifiedInput, "determinant factorization needs a verified representation");
  DetFactorization<S> out;
  out.det = det(assemble(rep.pencil())).in_ring(rep.ring());
  if (out.det.is_zero()) throw Error(ErrorCode::DivisionFails, "det M(y) vanishes identically");
  Poly<S> q = out.det;
  while (!q.is_constant()) {
    auto next = Poly<S>::divide_exact(q, rep.form());
    if (!next)
      throw Error(ErrorCode::DivisionFails, "det M(y) is not a constant multiple of a power of f (cofactor " +
                                                to_string(q) + ")");
    q = std::move(*next);
    ++out.exponent;
  }
  out.unit = FieldTraits<S>::bind(q.constant_value(), rep.field());
  if (rep.verified() && out.exponent != rep.clifford_index())
    throw Error(ErrorCode::InternalInconsistency, "det exponent " + std::to_string(out.exponent) +
                                                      " differs from t/d = " + std::to_string(rep.clifford_index()));
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

template <class S>
void require_compatible(const CliffordRep<S>& a, const CliffordRep<S>& b) {
  if (!same_ring(a.ring(), b.ring())) throw Error(ErrorCode::RingMismatch, "representations live over different rings");
  if (a.degree() != b.degree()) throw Error(ErrorCode::InvalidArgument, "representations have different degrees");
  if (a.form() != b.form()) throw Error(ErrorCode::InvalidArgument, "representations have different forms");
}

/// Base-variable monomials of total degree <= max_degree.
inline std::vector<Monomial> base_monomials(const PolyRing& ring, unsigned max_degree) {
  std::vector<Monomial> out{Monomial{}};
  const std::size_t first = ring.fiber_vars();
  for (unsigned deg = 1; deg <= max_degree; ++deg) {
    std::vector<Monomial> layer;
    for (const auto& m : out) {
      if (m.total_degree() != deg - 1) continue;
      std::size_t last = first;
      for (std::size_t k = first; k < ring.nvars(); ++k)
        if (m.exp[k]) last = k;
      for (std::size_t k = last; k < ring.nvars(); ++k) {
        Monomial n = m;
        ++n.exp[k];
        layer.push_back(n);
      }
    }
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

struct EquationKey {
  std::size_t gen, row, col;
  Monomial mono;
  bool operator<(const EquationKey& o) const {
    if (std::tie(gen, row, col) != std::tie(o.gen, o.row, o.col)) return std::tie(gen, row, col) < std::tie(o.gen, o.row, o.col);
    return mono.exp < o.mono.exp;
  }
};

template <class S>
PolyMatrix<S> combine(const std::vector<PolyMatrix<S>>& basis, const std::vector<S>& coeffs) {
  PolyMatrix<S> m = basis.front();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Poly<S> acc(m(i, j).ring());
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (!is_zero(coeffs[k]) && !basis[k](i, j).is_zero()) acc += basis[k](i, j).scaled(coeffs[k]);
      m(i, j) = std::move(acc);
    }
  return m;
}

template <class S>
std::vector<Mat<S>> scalar_generators(const LinearPencil<S>& p) {
  std::vector<Mat<S>> gens;
  for (const auto& a : p.coefficients()) gens.push_back(to_scalar(a, p.ring()->field()));
  return gens;
}

template <class S>
Vec<S> flatten(const Mat<S>& m) {
  Vec<S> v(m.size());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v(j * m.rows() + i) = m(i, j);
  return v;
}

template <class S>
Mat<S> unflatten(const Vec<S>& v, Eigen::Index n) {
  Mat<S> m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = v(j * n + i);
  return m;
}

}  // namespace detail

/// Basis of all theta (size t2 x t1, entries of t-degree <= max_t_degree)
/// with theta * A_i = B_i * theta for every i, where A and B are the
/// coefficient matrices of `from` and `to`.
template <class S>
std::vector<PolyMatrix<S>> intertwiner_basis(const LinearPencil<S>& from, const LinearPencil<S>& to,
                                             unsigned max_t_degree = 0) {
  if (!same_ring(from.ring(), to.ring())) throw Error(ErrorCode::RingMismatch, "pencils over different rings");
  const RingPtr& ring = from.ring();
  const FieldSpec& field = ring->field();
  const Eigen::Index t1 = from.size(), t2 = to.size();
  const auto tmonos = detail::base_monomials(*ring, ring->base_vars() ? max_t_degree : 0);
  const std::size_t nmono = tmonos.size();
  const std::size_t nunknown = static_cast<std::size_t>(t1 * t2) * nmono;

  std::map<detail::EquationKey, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, S>>> columns(nunknown);
  auto add_entry = [&](std::size_t unknown, std::size_t gen, Eigen::Index r, Eigen::Index c, const Poly<S>& p,
                       bool negate) {
    for (const auto& term : p.terms()) {
      const detail::EquationKey key{gen, static_cast<std::size_t>(r), static_cast<std::size_t>(c), term.mono};
      auto it = rows.try_emplace(key, rows.size()).first;
      columns[unknown].emplace_back(it->second, negate ? -term.coeff : term.coeff);
    }
  };
  for (Eigen::Index a = 0; a < t2; ++a) {
    for (Eigen::Index b = 0; b < t1; ++b) {
      for (std::size_t k = 0; k < nmono; ++k) {
        const std::size_t u = (static_cast<std::size_t>(a * t1 + b)) * nmono + k;
        Poly<S> tm = Poly<S>::from_terms(ring, {{tmonos[k], FieldTraits<S>::from_int(field, 1)}});
        for (std::size_t g = 0; g < ring->fiber_vars(); ++g) {
          const auto& A = from.coefficient(g);
          const auto& B = to.coefficient(g);
          // (E_ab * tm * A)(a, c) = tm * A(b, c)
          for (Eigen::Index c = 0; c < t1; ++c)
            if (!A(b, c).is_zero()) add_entry(u, g, a, c, tm * A(b, c), false);
          // (B * E_ab * tm)(r, b) = B(r, a) * tm
          for (Eigen::Index r = 0; r < t2; ++r)
            if (!B(r, a).is_zero()) add_entry(u, g, r, b, B(r, a) * tm, true);
        }
      }
    }
  }
  Mat<S> system(static_cast<Eigen::Index>(std::max<std::size_t>(rows.size(), 1)), static_cast<Eigen::Index>(nunknown));
  system.fill(FieldTraits<S>::from_int(field, 0));
  for (std::size_t u = 0; u < nunknown; ++u)
    for (const auto& [r, v] : columns[u]) system(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(u)) += v;
  const Mat<S> ker = kernel(system, field);

  std::vector<PolyMatrix<S>> basis;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    PolyMatrix<S> theta = poly_zero<S>(ring, t2, t1);
    for (Eigen::Index a = 0; a < t2; ++a)
      for (Eigen::Index b = 0; b < t1; ++b) {
        std::vector<typename Poly<S>::Term> terms;
        for (std::size_t m = 0; m < nmono; ++m) {
          const S& v = ker(static_cast<Eigen::Index>((static_cast<std::size_t>(a * t1 + b)) * nmono + m), k);
          if (!is_zero(v)) terms.push_back({tmonos[m], v});
        }
        theta(a, b) = Poly<S>::from_terms(ring, std::move(terms));
      }
    basis.push_back(std::move(theta));
  }
  return basis;
}

/// True when theta * A_i = B_i * theta for all i.
template <class S>
bool intertwines(const PolyMatrix<S>& theta, const LinearPencil<S>& from, const LinearPencil<S>& to) {
  for (std::size_t g = 0; g < from.ring()->fiber_vars(); ++g)
    if (!equal(multiply(theta, from.coefficient(g)), multiply(to.coefficient(g), theta))) return false;
  return true;
}

/// Square theta over k[t] is invertible iff det theta is a nonzero constant.
template <class S>
bool is_unit_matrix(const PolyMatrix<S>& theta, const RingPtr& ring) {
  if (theta.rows() != theta.cols()) return false;
  if (ring->base_vars() == 0) return rank(to_scalar(theta, ring->field()), ring->field()) == theta.rows();
  const Poly<S> d = det(theta);
  return d.is_constant() && !d.is_zero();
}

enum class EquivalenceVerdict { Equivalent, Inequivalent, Inconclusive };

inline const char* to_string(EquivalenceVerdict v) {
  switch (v) {
    case EquivalenceVerdict::Equivalent: return "equivalent";
    case EquivalenceVerdict::Inequivalent: return "inequivalent";
    case EquivalenceVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct EquivalenceOptions {
  std::uint64_t seed = 0;
  unsigned trials = 64;
  unsigned max_t_degree = 2;  // bound on the t-degree of theta when m > 0
};

template <class S>
struct EquivalenceResult {
  EquivalenceVerdict verdict = EquivalenceVerdict::Inconclusive;
  std::optional<PolyMatrix<S>> theta;
  std::vector<PolyMatrix<S>> basis;
  std::string reason;
  bool exhaustive = false;
  unsigned trials_used = 0;
  std::uint64_t seed = 0;

  Check to_check() const {
    Check c{"equivalence", Status::Inconclusive, reason, {}};
    if (verdict == EquivalenceVerdict::Equivalent) c.status = Status::Pass;
    if (verdict == EquivalenceVerdict::Inequivalent) c.status = Status::Fail;
    c.witness.emplace_back("verdict", to_string(verdict));
    c.witness.emplace_back("intertwiner_dim", std::to_string(basis.size()));
    c.witness.emplace_back("search", exhaustive ? "exhaustive" : "randomized");
    c.witness.emplace_back("trials", std::to_string(trials_used));
    c.witness.emplace_back("seed", std::to_string(seed));
    if (theta) {
      std::string rows;
      for (const auto& row : to_strings(*theta)) {
        if (!rows.empty()) rows += "; ";
        for (std::size_t k = 0; k < row.size(); ++k) rows += (k ? ", " : "") + row[k];
      }
      c.witness.emplace_back("theta", "[" + rows + "]");
    }
    return c;
  }
};

template <class S>
EquivalenceResult<S> equivalence_test(const CliffordRep<S>& rep1, const CliffordRep<S>& rep2,
                                      const EquivalenceOptions& opts = {});

namespace detail {

template <class S>
EquivalenceResult<S> search_invertible(const std::vector<PolyMatrix<S>>& basis, const RingPtr& ring,
                                       const EquivalenceOptions& opts) {
  EquivalenceResult<S> res;
  res.basis = basis;
  res.seed = opts.seed;
  const FieldSpec& field = ring->field();
  auto accept = [&](const PolyMatrix<S>& theta) {
    ++res.trials_used;
    if (!is_unit_matrix(theta, ring)) return false;
    res.theta = theta;
    res.verdict = EquivalenceVerdict::Equivalent;
    return true;
  };
  for (const auto& b : basis)
    if (accept(b)) {
      res.reason = "invertible intertwiner found";
      return res;
    }
  const std::size_t dim = basis.size();
  if (field.is_prime_field() && dim <= 3 && field.modulus() <= 13) {
    res.exhaustive = true;
    const std::uint64_t p = field.modulus();
    std::vector<std::uint64_t> digits(dim, 0);
    for (;;) {
      std::size_t k = 0;
      while (k < dim && ++digits[k] == p) digits[k++] = 0;
      if (k == dim) break;
      std::vector<S> coeffs;
      for (auto v : digits) coeffs.push_back(FieldTraits<S>::from_int(field, static_cast<long long>(v)));
      if (accept(combine(basis, coeffs))) {
        res.reason = "invertible intertwiner found by exhaustive search";
        return res;
      }
    }
    if (ring->base_vars() == 0) {
      res.verdict = EquivalenceVerdict::Inequivalent;
      res.reason = "every intertwiner is singular (exhaustive)";
    } else {
      res.reason = "no unimodular intertwiner of bounded t-degree (exhaustive)";
    }
    return res;
  }
  auto rng = seeded_rng(opts.seed, 0x45515549ull);
  for (unsigned trial = 0; trial < opts.trials; ++trial) {
    std::vector<S> coeffs;
    for (std::size_t k = 0; k < dim; ++k) coeffs.push_back(FieldTraits<S>::random(field, rng, 10));
    if (accept(combine(basis, coeffs))) {
      res.reason = "invertible intertwiner found by random combination";
      return res;
    }
  }
  res.reason = "no invertible element found among " + std::to_string(res.trials_used) + " candidates";
  return res;
}

}  // namespace detail

/// Decides whether theta * A1_i = A2_i * theta has an invertible solution.
/// Equivalent carries theta; Inequivalent is reported only with a proof
/// (size mismatch, zero intertwiner space, or exhaustive singularity).
template <class S>
EquivalenceResult<S> equivalence_test(const CliffordRep<S>& rep1, const CliffordRep<S>& rep2,
                                      const EquivalenceOptions& opts) {
  detail::require_compatible(rep1, rep2);
  EquivalenceResult<S> res;
  res.seed = opts.seed;
  if (rep1.size() != rep2.size()) {
    res.verdict = EquivalenceVerdict::Inequivalent;
    res.reason = "size mismatch";
    return res;
  }
  const RingPtr& ring = rep1.ring();
  const auto basis = intertwiner_basis(rep1.pencil(), rep2.pencil(), ring->base_vars() ? opts.max_t_degree : 0);
  if (basis.empty()) {
    if (ring->base_vars() == 0) {
      res.verdict = EquivalenceVerdict::Inequivalent;
      res.reason = "intertwiner space is zero";
      return res;
    }
    // An equivalence over k[t] specializes to one on every fiber.
    auto rng = seeded_rng(opts.seed, 0x46494252ull);
    std::vector<S> point;
    for (std::size_t j = 0; j < ring->base_vars(); ++j) point.push_back(FieldTraits<S>::random(ring->field(), rng, 10));
    CliffordRep<S> f1(specialize(rep1.pencil(), point), specialize(rep1.form(), fiber_ring(ring), point), rep1.degree());
    CliffordRep<S> f2(specialize(rep2.pencil(), point), specialize(rep2.form(), fiber_ring(ring), point), rep2.degree());
    auto fiber = equivalence_test(f1, f2, opts);
    if (fiber.verdict == EquivalenceVerdict::Inequivalent) {
      res.verdict = EquivalenceVerdict::Inequivalent;
      res.reason = "fibers over a base point are inequivalent";
    } else {
      res.reason = "no intertwiner of t-degree <= " + std::to_string(opts.max_t_degree);
    }
    return res;
  }
  return detail::search_invertible(basis, ring, opts);
}

/// Dimension of the space of all intertwiners theta * A1_i = A2_i * theta.
template <class S>
std::size_t hom_space_dim(const CliffordRep<S>& rep1, const CliffordRep<S>& rep2) {
  detail::require_compatible(rep1, rep2);
  if (rep1.ring()->base_vars() != 0)
    throw Error(ErrorCode::Unsupported, "Hom dimension needs a representation without base variables; specialize first");
  return intertwiner_basis(rep1.pencil(), rep2.pencil(), 0).size();
}

/// theta * A_i * theta^-1 for an invertible scalar theta (unverified result).
template <class S>
CliffordRep<S> conjugate(const CliffordRep<S>& rep, const Mat<S>& theta) {
  const FieldSpec& field = rep.field();
  auto inv = inverse(theta, field);
  if (!inv) throw Error(ErrorCode::InvalidArgument, "conjugating matrix is singular");
  if (theta.rows() != rep.size()) throw Error(ErrorCode::ShapeMismatch, "conjugating matrix has the wrong size");
  const PolyMatrix<S> th = to_poly(bind(theta, field), rep.ring());
  const PolyMatrix<S> thi = to_poly(*inv, rep.ring());
  std::vector<PolyMatrix<S>> coeffs;
  for (const auto& a : rep.pencil().coefficients()) coeffs.push_back(multiply(multiply(th, a), thi));
  return CliffordRep<S>(LinearPencil<S>(rep.ring(), std::move(coeffs)), rep.form(), rep.degree(), rep.flags());
}

namespace detail {

template <class S>
CliffordRep<S> verified_or_throw(CliffordRep<S> rep, bool inputs_verified, const char* what) {
  auto cert = verify_relation(rep);
  if (!cert.pass && inputs_verified)
    throw Error(ErrorCode::InternalInconsistency, std::string(what) + " broke the Clifford relation");
  return rep;
}

inline std::vector<std::string> merge_flags(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& f : b)
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

}  // namespace detail

/// Block-diagonal pencil; the result is re-verified.
template <class S>
CliffordRep<S> direct_sum(const CliffordRep<S>& rep1, const CliffordRep<S>& rep2) {
  detail::require_compatible(rep1, rep2);
  const RingPtr& ring = rep1.ring();
  std::vector<PolyMatrix<S>> coeffs;
  for (std::size_t g = 0; g < ring->fiber_vars(); ++g)
    coeffs.push_back(block_diagonal(rep1.pencil().coefficient(g), rep2.pencil().coefficient(g), Poly<S>(ring)));
  CliffordRep<S> sum(LinearPencil<S>(ring, std::move(coeffs)), rep1.form(), rep1.degree(),
                     detail::merge_flags(rep1.flags(), rep2.flags()));
  return detail::verified_or_throw(std::move(sum), rep1.verified() && rep2.verified(), "direct sum");
}

/// Twist by the free module of rank `mult`: A_i (x) I_mult. The result is re-verified.
template <class S>
CliffordRep<S> twist_by_free(const CliffordRep<S>& rep, unsigned mult) {
  if (mult < 1) throw Error(ErrorCode::InvalidArgument, "twist multiplicity must be at least 1");
  const RingPtr& ring = rep.ring();
  const PolyMatrix<S> id = poly_identity<S>(ring, static_cast<Eigen::Index>(mult));
  std::vector<PolyMatrix<S>> coeffs;
  for (const auto& a : rep.pencil().coefficients()) coeffs.push_back(in_ring(kron(a, id), ring));
  CliffordRep<S> out(LinearPencil<S>(ring, std::move(coeffs)), rep.form(), rep.degree(), rep.flags());
  return detail::verified_or_throw(std::move(out), rep.verified(), "free twist");
}

// ---------------------------------------------------------------------------

enum class IrreducibilityVerdict { Irreducible, Reducible, Inconclusive };

inline const char* to_string(IrreducibilityVerdict v) {
  switch (v) {
    case IrreducibilityVerdict::Irreducible: return "irreducible";
    case IrreducibilityVerdict::Reducible: return "reducible";
    case IrreducibilityVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct IrreducibilityOptions {
  std::uint64_t seed = 0;
  unsigned trials = 32;
};

template <class S>
struct IrreducibilityResult {
  IrreducibilityVerdict verdict = IrreducibilityVerdict::Inconclusive;
  Eigen::Index algebra_dim = 0;
  Eigen::Index size = 0;
  Mat<S> subspace;  // basis of a proper invariant subspace, one column per vector
  std::string reason;
  std::uint64_t seed = 0;
  unsigned trials = 0;

  Check to_check() const {
    Check c{"irreducibility", Status::Inconclusive, reason, {}};
    if (verdict == IrreducibilityVerdict::Irreducible) c.status = Status::Pass;
    if (verdict == IrreducibilityVerdict::Reducible) c.status = Status::Fail;
    c.witness.emplace_back("verdict", to_string(verdict));
    c.witness.emplace_back("algebra_dim", std::to_string(algebra_dim));
    c.witness.emplace_back("full_matrix_algebra_dim", std::to_string(size * size));
    c.witness.emplace_back("seed", std::to_string(seed));
    c.witness.emplace_back("trials", std::to_string(trials));
    if (verdict == IrreducibilityVerdict::Reducible) {
      std::string rows;
      for (Eigen::Index k = 0; k < subspace.cols(); ++k) {
        if (k) rows += "; ";
        for (Eigen::Index i = 0; i < subspace.rows(); ++i) rows += (i ? ", " : "") + to_string(subspace(i, k));
      }
      c.witness.emplace_back("invariant_subspace", "[" + rows + "]");
    }
    return c;
  }
};

/// Dimension of the unital algebra generated by the coefficient matrices.
template <class S>
Eigen::Index generated_algebra_dim(const std::vector<Mat<S>>& gens, Eigen::Index t, const FieldSpec& field) {
  IncrementalSpan<S> span(t * t, field);
  std::vector<Mat<S>> queue{identity<S>(t, field)};
  span.add(detail::flatten(queue.front()));
  for (std::size_t head = 0; head < queue.size() && span.dimension() < t * t; ++head) {
    for (const auto& g : gens) {
      Mat<S> w = g * queue[head];
      if (span.add(detail::flatten(w))) queue.push_back(std::move(w));
    }
  }
  return span.dimension();
}

/// Smallest subspace containing v and stable under every generator.
template <class S>
std::vector<Vec<S>> spin(const Vec<S>& v, const std::vector<Mat<S>>& gens, const FieldSpec& field) {
  IncrementalSpan<S> span(v.size(), field);
  if (!span.add(v)) return {};
  std::vector<Vec<S>> queue{bind(Mat<S>(v), field)};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& g : gens) {
      Vec<S> w = g * queue[head];
      if (span.add(w)) queue.push_back(std::move(w));
    }
  return queue;
}

/// Absolute irreducibility via algebra saturation; otherwise searches for an
/// invariant subspace by spinning basis and random vectors under the A_i and
/// under their transposes (an invariant subspace of the transposes yields
/// its annihilator).
template <class S>
IrreducibilityResult<S> irreducibility_check(const CliffordRep<S>& rep, const IrreducibilityOptions& opts = {}) {
  if (rep.ring()->base_vars() != 0)
    throw Error(ErrorCode::Unsupported, "irreducibility needs a representation without base variables; specialize first");
  if (!rep.verified()) throw Error(ErrorCode::UnverifiedInput, "irreducibility check needs a verified representation");
  const FieldSpec& field = rep.field();
  const Eigen::Index t = rep.size();
  IrreducibilityResult<S> res;
  res.size = t;
  res.seed = opts.seed;
  const auto gens = detail::scalar_generators(rep.pencil());
  res.algebra_dim = generated_algebra_dim(gens, t, field);
  if (res.algebra_dim == t * t) {
    res.verdict = IrreducibilityVerdict::Irreducible;
    res.reason = "generated algebra is the full matrix algebra (absolutely irreducible)";
    return res;
  }
  std::vector<Mat<S>> transposed;
  for (const auto& g : gens) transposed.push_back(g.transpose());

  auto proper = [&](const std::vector<Vec<S>>& basis) {
    return !basis.empty() && static_cast<Eigen::Index>(basis.size()) < t;
  };
  auto report = [&](const std::vector<Vec<S>>& basis) {
    res.verdict = IrreducibilityVerdict::Reducible;
    res.subspace = Mat<S>(t, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) res.subspace.col(static_cast<Eigen::Index>(k)) = basis[k];
    res.reason = "found a proper invariant subspace of dimension " + std::to_string(basis.size());
  };
  auto try_vector = [&](const Vec<S>& v) {
    ++res.trials;
    auto sub = spin(v, gens, field);
    if (proper(sub)) {
      report(sub);
      return true;
    }
    auto dual = spin(v, transposed, field);
    if (proper(dual)) {
      Mat<S> w(t, static_cast<Eigen::Index>(dual.size()));
      for (std::size_t k = 0; k < dual.size(); ++k) w.col(static_cast<Eigen::Index>(k)) = dual[k];
      const Mat<S> ann = kernel(Mat<S>(w.transpose()), field);
      std::vector<Vec<S>> basis;
      for (Eigen::Index k = 0; k < ann.cols(); ++k) basis.push_back(ann.col(k));
      report(basis);
      return true;
    }
    return false;
  };
  const Mat<S> id = identity<S>(t, field);
  for (Eigen::Index j = 0; j < t; ++j)
    if (try_vector(id.col(j))) return res;
  auto rng = seeded_rng(opts.seed, 0x49525245ull);
  for (unsigned k = 0; k < opts.trials; ++k) {
    Vec<S> v(t);
    for (Eigen::Index i = 0; i < t; ++i) v(i) = FieldTraits<S>::random(field, rng, 10);
    if (try_vector(v)) return res;
  }
  res.reason = "algebra dimension " + std::to_string(res.algebra_dim) + " < " + std::to_string(t * t) +
               " but no invariant subspace found";
  return res;
}

}  // namespace ucl

#endif  // UCL_CLIFFORD_HPP
