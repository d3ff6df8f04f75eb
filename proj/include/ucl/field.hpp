#ifndef UCL_FIELD_HPP
#define UCL_FIELD_HPP

// Exact coefficient fields: the rationals (GMP) and prime fields GF(p) with
// p < 2^61. Both scalar types are usable as Eigen scalars.

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "ucl/error.hpp"

namespace ucl {

class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  FieldSpec() = default;
  static FieldSpec rationals() { return FieldSpec{}; }
  /// Throws InvalidArgument unless p is a prime below 2^61.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts `QQ` or `GF(p)`.
  static FieldSpec parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  bool is_prime_field() const noexcept { return kind_ == Kind::PrimeField; }
  std::uint64_t modulus() const noexcept { return p_; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const noexcept { return p_; }
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  Kind kind_ = Kind::Rationals;
  std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

// ---------------------------------------------------------------------------

class Rational {
 public:
  Rational() = default;
  Rational(long long v) : q_(static_cast<long>(v)) {}  // NOLINT: Eigen literals
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& value() const noexcept { return q_; }
  bool is_zero() const noexcept { return sgn(q_) == 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  /// Total order used only for canonical sorting, not field structure.
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_;
};

/// Residue modulo a prime. A value constructed from an integer literal is
/// "unbound" (no modulus yet) and adopts the modulus of the first bound value
/// it meets; this lets Eigen build Zero()/Identity() without field context.
class ModP {
 public:
  ModP() = default;
  ModP(long long literal) : lit_(literal) {}  // NOLINT: Eigen literals
  ModP(std::uint64_t residue, std::uint64_t p) : v_(residue % p), p_(p) {}

  static ModP from_integer(long long v, std::uint64_t p);

  bool bound() const noexcept { return p_ != 0; }
  std::uint64_t modulus() const noexcept { return p_; }
  /// Residue in [0, p); requires a bound value.
  std::uint64_t residue() const;
  long long literal() const noexcept { return lit_; }
  bool is_zero() const noexcept { return p_ ? v_ == 0 : lit_ == 0; }
  ModP bind(std::uint64_t p) const;
  ModP inverse() const;

  ModP& operator+=(const ModP& o);
  ModP& operator-=(const ModP& o);
  ModP& operator*=(const ModP& o);
  ModP& operator/=(const ModP& o);

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a);
  friend bool operator==(const ModP& a, const ModP& b);
  friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }
  friend bool operator<(const ModP& a, const ModP& b);

 private:
  static std::uint64_t common_modulus(const ModP& a, const ModP& b);

  long long lit_ = 0;
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const ModP& x) { return x.is_zero(); }
Rational inverse(const Rational& x);
inline ModP inverse(const ModP& x) { return x.inverse(); }

std::string to_string(const Rational& x);
/// Symmetric representative in (-p/2, p/2].
std::string to_string(const ModP& x);

// ---------------------------------------------------------------------------

template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr FieldSpec::Kind kind = FieldSpec::Kind::Rationals;
  static bool accepts(const FieldSpec& f) { return !f.is_prime_field(); }
  static Rational from_int(const FieldSpec&, long long v) { return Rational(v); }
  static Rational bind(const Rational& x, const FieldSpec&) { return x; }
  /// `num` and `den` are decimal integers (den may be empty).
  static Rational parse(const FieldSpec& f, const std::string& num, const std::string& den);
  /// Uniform small integer in [-bound, bound].
  template <class Rng>
  static Rational random(const FieldSpec&, Rng& rng, long long bound = 10) {
    std::uniform_int_distribution<long long> dist(-bound, bound);
    return Rational(dist(rng));
  }
};

template <>
struct FieldTraits<ModP> {
  static constexpr FieldSpec::Kind kind = FieldSpec::Kind::PrimeField;
  static bool accepts(const FieldSpec& f) { return f.is_prime_field(); }
  static ModP from_int(const FieldSpec& f, long long v) {
    return ModP::from_integer(v, f.modulus());
  }
  static ModP bind(const ModP& x, const FieldSpec& f) { return x.bind(f.modulus()); }
  static ModP parse(const FieldSpec& f, const std::string& num, const std::string& den);
  /// Uniform residue; `bound` is ignored.
  template <class Rng>
  static ModP random(const FieldSpec& f, Rng& rng, long long /*bound*/ = 0) {
    std::uniform_int_distribution<std::uint64_t> dist(0, f.modulus() - 1);
    return ModP(dist(rng), f.modulus());
  }
};

/// Calls `fn.template operator()<S>()` with S the scalar type of `field`.
template <class Fn>
decltype(auto) with_field(const FieldSpec& field, Fn&& fn) {
  if (field.is_prime_field()) return std::forward<Fn>(fn).template operator()<ModP>();
  return std::forward<Fn>(fn).template operator()<Rational>();
}

/// Square root in GF(p) (Tonelli-Shanks); returns false for non-residues.
bool sqrt_mod(const ModP& a, ModP& root);
/// Square root of a rational that is a perfect square.
bool sqrt_rational(const Rational& a, Rational& root);

}  // namespace ucl

namespace Eigen {

template <>
struct NumTraits<ucl::Rational> : GenericNumTraits<ucl::Rational> {
  using Real = ucl::Rational;
  using NonInteger = ucl::Rational;
  using Nested = ucl::Rational;
  using Literal = ucl::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 10,
    MulCost = 20
  };
};

template <>
struct NumTraits<ucl::ModP> : GenericNumTraits<ucl::ModP> {
  using Real = ucl::ModP;
  using NonInteger = ucl::ModP;
  using Nested = ucl::ModP;
  using Literal = ucl::ModP;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
};

}  // namespace Eigen

#endif  // UCL_FIELD_HPP
