#ifndef UCL_POLY_HPP
#define UCL_POLY_HPP

// Sparse multivariate polynomials over an exact field, graded in the fiber
// variables y0..yn with base parameters t1..tm.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ucl/field.hpp"

namespace ucl {

inline constexpr std::size_t kMaxVars = 16;

/// Variables y0..yn (indices 0..n) followed by t1..tm (indices n+1..n+m).
class PolyRing {
 public:
  PolyRing(FieldSpec field, std::size_t base_vars, std::size_t fiber_vars);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t base_vars() const noexcept { return base_vars_; }
  std::size_t fiber_vars() const noexcept { return fiber_vars_; }
  std::size_t nvars() const noexcept { return base_vars_ + fiber_vars_; }
  std::size_t y_index(std::size_t i) const { return i; }
  std::size_t t_index(std::size_t j) const { return fiber_vars_ + j - 1; }  // j is 1-based
  bool is_fiber(std::size_t var) const noexcept { return var < fiber_vars_; }
  const std::string& var_name(std::size_t var) const { return names_.at(var); }
  /// Index of a variable name, or nullopt.
  std::optional<std::size_t> find_var(const std::string& name) const;

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.field_ == b.field_ && a.base_vars_ == b.base_vars_ && a.fiber_vars_ == b.fiber_vars_;
  }

 private:
  FieldSpec field_;
  std::size_t base_vars_;
  std::size_t fiber_vars_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(FieldSpec field, std::size_t base_vars, std::size_t fiber_vars) {
  return std::make_shared<const PolyRing>(field, base_vars, fiber_vars);
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  unsigned degree_in(std::size_t first, std::size_t count) const {
    unsigned d = 0;
    for (std::size_t k = first; k < first + count; ++k) d += exp[k];
    return d;
  }
  bool divides(const Monomial& o) const {
    for (std::size_t k = 0; k < kMaxVars; ++k)
      if (exp[k] > o.exp[k]) return false;
    return true;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);
/// Requires b | a.
Monomial operator/(const Monomial& a, const Monomial& b);

/// Graded lex, y0 > y1 > ... > yn > t1 > ... > tm. `a` before `b` when larger.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    return a.exp > b.exp;
  }
};

template <class S>
class Poly {
 public:
  using Scalar = S;
  struct Term {
    Monomial mono;
    S coeff;
  };

  Poly() = default;
  /// Unbound constant (adopts the ring of the first ring-bound operand).
  Poly(long long c) {  // NOLINT: Eigen literals
    if (c != 0) terms_.push_back({Monomial{}, S(c)});
  }
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, const S& c) {
    Poly p(ring);
    S v = FieldTraits<S>::bind(c, ring->field());
    if (!ucl::is_zero(v)) p.terms_.push_back({Monomial{}, v});
    return p;
  }
  static Poly variable(RingPtr ring, std::size_t var) {
    if (var >= ring->nvars()) throw Error(ErrorCode::UnknownVariable, "variable index out of range");
    Poly p(ring);
    Monomial m;
    m.exp[var] = 1;
    p.terms_.push_back({m, FieldTraits<S>::from_int(ring->field(), 1)});
    return p;
  }
  static Poly y(RingPtr ring, std::size_t i) { return variable(ring, ring->y_index(i)); }
  static Poly t(RingPtr ring, std::size_t j) { return variable(ring, ring->t_index(j)); }
  /// Builds from unsorted terms; combines duplicates and drops zeros.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.total_degree() == 0);
  }
  S constant_value() const {
    if (!is_constant()) throw Error(ErrorCode::InvalidArgument, "polynomial is not constant");
    return terms_.empty() ? S(0) : terms_[0].coeff;
  }
  /// Coefficient of the monomial, zero if absent.
  S coefficient(const Monomial& m) const;
  const Term& leading_term() const { return terms_.front(); }
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.total_degree()); }
  unsigned y_degree(const Monomial& m) const { return ring_ ? m.degree_in(0, ring_->fiber_vars()) : 0; }
  unsigned t_degree(const Monomial& m) const {
    return ring_ ? m.degree_in(ring_->fiber_vars(), ring_->base_vars()) : 0;
  }
  /// Every term has y-degree e; the zero polynomial qualifies for every e.
  bool is_y_homogeneous(unsigned e) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return y_degree(t.mono) == e; });
  }
  /// y-degree of a homogeneous polynomial, nullopt if not homogeneous or zero.
  std::optional<unsigned> homogeneous_y_degree() const;
  bool involves_base_vars() const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t_degree(t.mono) > 0; });
  }

  /// Returns this polynomial attached to `ring`, binding unbound coefficients.
  Poly in_ring(const RingPtr& ring) const;

  Poly& operator+=(const Poly& o) { return *this = add(*this, o, false); }
  Poly& operator-=(const Poly& o) { return *this = add(*this, o, true); }
  Poly& operator*=(const Poly& o) { return *this = mul(*this, o); }

  friend Poly operator+(const Poly& a, const Poly& b) { return add(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return add(a, b, true); }
  friend Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend Poly operator*(const S& c, const Poly& a) { return a.scaled(c); }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_))
      throw Error(ErrorCode::RingMismatch, "comparing polynomials from different rings");
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
      if (!(a.terms_[k].mono == b.terms_[k].mono) || a.terms_[k].coeff != b.terms_[k].coeff) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(const S& c) const;
  /// Substitutes values for the assigned variables (index -> value);
  /// the result stays in the same ring.
  Poly substitute(const std::map<std::size_t, S>& values) const;
  /// Full evaluation; `point` has one value per ring variable.
  S evaluate(std::span<const S> point) const;
  Poly derivative(std::size_t var) const;
  /// Moves to a ring with the same fiber variables and fewer base
  /// variables; every dropped variable must have exponent zero.
  Poly drop_base_vars(const RingPtr& target) const;
  /// Exact quotient a / b, or nullopt when b does not divide a.
  static std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

  /// Groups terms by their y-part: y-monomial -> coefficient in the t-variables.
  std::vector<std::pair<Monomial, Poly>> split_by_y() const;

  template <class T, class Fn>
  Poly<T> map_coefficients(const RingPtr& target, Fn&& fn) const {
    std::vector<typename Poly<T>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono, fn(t.coeff)});
    return Poly<T>::from_terms(target, std::move(out));
  }

 private:
  static RingPtr common_ring(const Poly& a, const Poly& b) {
    if (a.ring_ && b.ring_) {
      if (!same_ring(a.ring_, b.ring_))
        throw Error(ErrorCode::RingMismatch, "polynomials from different rings");
      return a.ring_;
    }
    return a.ring_ ? a.ring_ : b.ring_;
  }
  static Poly add(const Poly& a, const Poly& b, bool subtract);
  static Poly mul(const Poly& a, const Poly& b);

  RingPtr ring_;
  std::vector<Term> terms_;  // strictly decreasing in GrlexDescending
};

// ---------------------------------------------------------------------------

template <class S>
Poly<S> Poly<S>::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return GrlexDescending{}(a.mono, b.mono); });
  Poly p(std::move(ring));
  for (auto& t : terms) {
    S c = p.ring_ ? FieldTraits<S>::bind(t.coeff, p.ring_->field()) : t.coeff;
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += c;
    } else {
      p.terms_.push_back({t.mono, std::move(c)});
    }
  }
  // drop zeros introduced by combination
  std::erase_if(p.terms_, [](const Term& t) { return ucl::is_zero(t.coeff); });
  return p;
}

template <class S>
std::optional<unsigned> Poly<S>::homogeneous_y_degree() const {
  if (terms_.empty()) return std::nullopt;
  const unsigned e = y_degree(terms_.front().mono);
  if (!is_y_homogeneous(e)) return std::nullopt;
  return e;
}

template <class S>
S Poly<S>::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return ring_ ? FieldTraits<S>::from_int(ring_->field(), 0) : S(0);
}

template <class S>
Poly<S> Poly<S>::in_ring(const RingPtr& ring) const {
  if (ring_) {
    if (!same_ring(ring_, ring)) throw Error(ErrorCode::RingMismatch, "polynomial belongs to a different ring");
    return *this;
  }
  Poly p(ring);
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono, FieldTraits<S>::bind(t.coeff, ring->field())});
  return p;
}

template <class S>
Poly<S> Poly<S>::add(const Poly& a0, const Poly& b0, bool subtract) {
  const RingPtr ring = common_ring(a0, b0);
  const Poly a = ring ? a0.in_ring(ring) : a0;
  const Poly b = ring ? b0.in_ring(ring) : b0;
  Poly r(ring);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  const GrlexDescending before;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && before(a.terms_[i].mono, b.terms_[j].mono))) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || before(b.terms_[j].mono, a.terms_[i].mono)) {
      const auto& t = b.terms_[j++];
      r.terms_.push_back({t.mono, subtract ? -t.coeff : t.coeff});
    } else {
      S c = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
      if (!ucl::is_zero(c)) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

template <class S>
Poly<S> Poly<S>::mul(const Poly& a0, const Poly& b0) {
  const RingPtr ring = common_ring(a0, b0);
  if (a0.is_zero() || b0.is_zero()) return Poly(ring);
  const Poly a = ring ? a0.in_ring(ring) : a0;
  const Poly b = ring ? b0.in_ring(ring) : b0;
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return from_terms(ring, std::move(prod));
}

template <class S>
Poly<S> Poly<S>::scaled(const S& c) const {
  if (ucl::is_zero(c)) return Poly(ring_);
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

template <class S>
Poly<S> Poly<S>::substitute(const std::map<std::size_t, S>& values) const {
  for (const auto& [var, v] : values)
    if (!ring_ || var >= ring_->nvars()) throw Error(ErrorCode::UnknownVariable, "substitution for unknown variable");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term r = t;
    for (const auto& [var, v] : values) {
      for (unsigned e = 0; e < t.mono.exp[var]; ++e) r.coeff *= v;
      r.mono.exp[var] = 0;
    }
    out.push_back(std::move(r));
  }
  return from_terms(ring_, std::move(out));
}

template <class S>
S Poly<S>::evaluate(std::span<const S> point) const {
  const std::size_t nv = ring_ ? ring_->nvars() : 0;
  if (point.size() != nv) throw Error(ErrorCode::PartialAssignment, "evaluation point has the wrong length");
  S sum = ring_ ? FieldTraits<S>::from_int(ring_->field(), 0) : S(0);
  for (const auto& t : terms_) {
    S v = t.coeff;
    for (std::size_t k = 0; k < nv; ++k)
      for (unsigned e = 0; e < t.mono.exp[k]; ++e) v *= point[k];
    sum += v;
  }
  return sum;
}

template <class S>
Poly<S> Poly<S>::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const unsigned e = t.mono.exp[var];
    if (e == 0) continue;
    Term r = t;
    r.mono.exp[var] = static_cast<std::uint16_t>(e - 1);
    r.coeff *= ring_ ? FieldTraits<S>::from_int(ring_->field(), e) : S(static_cast<long long>(e));
    out.push_back(std::move(r));
  }
  return from_terms(ring_, std::move(out));
}

template <class S>
Poly<S> Poly<S>::drop_base_vars(const RingPtr& target) const {
  if (!ring_) return in_ring(target);
  if (ring_->field() != target->field() || ring_->fiber_vars() != target->fiber_vars() ||
      target->base_vars() > ring_->base_vars())
    throw Error(ErrorCode::RingMismatch, "incompatible target ring");
  Poly r(target);
  for (const auto& t : terms_) {
    for (std::size_t k = target->nvars(); k < ring_->nvars(); ++k)
      if (t.mono.exp[k] != 0) throw Error(ErrorCode::PartialAssignment, "dropped variable still occurs");
    r.terms_.push_back(t);
  }
  return r;
}

template <class S>
std::optional<Poly<S>> Poly<S>::divide_exact(const Poly& a0, const Poly& b0) {
  if (b0.is_zero()) throw Error(ErrorCode::DivisionFails, "division by the zero polynomial");
  const RingPtr ring = common_ring(a0, b0);
  Poly rem = ring ? a0.in_ring(ring) : a0;
  const Poly b = ring ? b0.in_ring(ring) : b0;
  const Term& lead = b.terms_.front();
  const S lead_inv = ucl::inverse(lead.coeff);
  std::vector<Term> quotient;
  while (!rem.is_zero()) {
    const Term& lt = rem.terms_.front();
    if (!lead.mono.divides(lt.mono)) return std::nullopt;
    Poly step(ring);
    step.terms_.push_back({lt.mono / lead.mono, lt.coeff * lead_inv});
    quotient.push_back(step.terms_.front());
    rem -= step * b;
  }
  return from_terms(ring, std::move(quotient));
}

template <class S>
std::vector<std::pair<Monomial, Poly<S>>> Poly<S>::split_by_y() const {
  std::map<Monomial, std::vector<Term>, GrlexDescending> groups;
  const std::size_t ny = ring_ ? ring_->fiber_vars() : 0;
  for (const auto& t : terms_) {
    Monomial ypart, tpart = t.mono;
    for (std::size_t k = 0; k < ny; ++k) {
      ypart.exp[k] = t.mono.exp[k];
      tpart.exp[k] = 0;
    }
    groups[ypart].push_back({tpart, t.coeff});
  }
  std::vector<std::pair<Monomial, Poly>> out;
  for (auto& [m, ts] : groups) out.emplace_back(m, from_terms(ring_, std::move(ts)));
  return out;
}

/// Canonical text: terms in decreasing grlex order, e.g. `y0*y3 - y1*y2`.
template <class S>
std::string to_string(const Poly<S>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string c = to_string(t.coeff);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t k = 0; k < kMaxVars; ++k) {
      const unsigned e = t.mono.exp[k];
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += p.ring() ? p.ring()->var_name(k) : "x" + std::to_string(k);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += c;
    } else if (c == "1") {
      out += mono;
    } else {
      out += c + "*" + mono;
    }
  }
  return out;
}

}  // namespace ucl

namespace Eigen {

template <class S>
struct NumTraits<ucl::Poly<S>> : GenericNumTraits<ucl::Poly<S>> {
  using Real = ucl::Poly<S>;
  using NonInteger = ucl::Poly<S>;
  using Nested = ucl::Poly<S>;
  using Literal = ucl::Poly<S>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 50,
    MulCost = 200
  };
};

}  // namespace Eigen

#endif  // UCL_POLY_HPP
