#include "ucl/field.hpp"

#include <cctype>

namespace ucl {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonLinearEntry: return "NonLinearEntry";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::PartialAssignment: return "PartialAssignment";
    case ErrorCode::DivisionFails: return "DivisionFails";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NondiagonalInput: return "NondiagonalInput";
    case ErrorCode::UnverifiedInput: return "UnverifiedInput";
    case ErrorCode::RotationMismatch: return "RotationMismatch";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t k = 5; k <= n / k; k += 6) {
    if (n % k == 0 || n % (k + 2) == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 61))
    throw Error(ErrorCode::InvalidArgument, "prime modulus must be below 2^61");
  if (!is_prime(p))
    throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  FieldSpec f;
  f.kind_ = Kind::PrimeField;
  f.p_ = p;
  return f;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "QQ") return rationals();
  if (s.size() > 4 && s.rfind("GF(", 0) == 0 && s.back() == ')') {
    const std::string digits = s.substr(3, s.size() - 4);
    if (digits.empty() || digits.size() > 19) throw Error(ErrorCode::InvalidArgument, "bad field: " + text);
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorCode::InvalidArgument, "bad field: " + text);
    return prime(std::stoull(digits));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown field '" + text + "' (expected QQ or GF(p))");
}

std::string FieldSpec::to_string() const {
  if (kind_ == Kind::Rationals) return "QQ";
  return "GF(" + std::to_string(p_) + ")";
}

// ---------------------------------------------------------------------------

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational inverse(const Rational& x) { return Rational(1) / x; }

std::string to_string(const Rational& x) { return x.value().get_str(); }

bool sqrt_rational(const Rational& a, Rational& root) {
  if (sgn(a.value()) < 0) return false;
  const mpz_class& num = a.value().get_num();
  const mpz_class& den = a.value().get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  root = Rational(mpq_class(rn, rd));
  return true;
}

Rational FieldTraits<Rational>::parse(const FieldSpec&, const std::string& num, const std::string& den) {
  mpz_class n(num, 10);
  mpz_class d = den.empty() ? mpz_class(1) : mpz_class(den, 10);
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  return Rational(mpq_class(n, d));
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_signed(long long v, std::uint64_t p) {
  const auto sp = static_cast<__int128>(p);
  __int128 r = static_cast<__int128>(v) % sp;
  if (r < 0) r += sp;
  return static_cast<std::uint64_t>(r);
}

long long checked_literal(__int128 v) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw Error(ErrorCode::InvalidArgument, "unbound literal overflow");
  return static_cast<long long>(v);
}

}  // namespace

ModP ModP::from_integer(long long v, std::uint64_t p) { return ModP(reduce_signed(v, p), p); }

std::uint64_t ModP::residue() const {
  if (!p_) throw Error(ErrorCode::InvalidArgument, "residue of an unbound literal");
  return v_;
}

ModP ModP::bind(std::uint64_t p) const {
  if (p_ == p) return *this;
  if (p == 0) return *this;
  if (p_ != 0) throw Error(ErrorCode::FieldMismatch, "residues modulo different primes");
  return from_integer(lit_, p);
}

std::uint64_t ModP::common_modulus(const ModP& a, const ModP& b) {
  if (a.p_ && b.p_ && a.p_ != b.p_)
    throw Error(ErrorCode::FieldMismatch, "residues modulo different primes");
  return a.p_ ? a.p_ : b.p_;
}

ModP ModP::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
  if (!p_) {
    if (lit_ == 1 || lit_ == -1) return *this;
    throw Error(ErrorCode::InvalidArgument, "inverse of an unbound literal");
  }
  return ModP(powmod(v_, p_ - 2, p_), p_);
}

ModP& ModP::operator+=(const ModP& o) {
  const std::uint64_t p = common_modulus(*this, o);
  if (!p) {
    lit_ = checked_literal(static_cast<__int128>(lit_) + o.lit_);
    return *this;
  }
  const ModP a = bind(p), b = o.bind(p);
  std::uint64_t s = a.v_ + b.v_;
  if (s >= p) s -= p;
  *this = ModP(s, p);
  return *this;
}

ModP& ModP::operator-=(const ModP& o) { return *this += -o; }

ModP& ModP::operator*=(const ModP& o) {
  const std::uint64_t p = common_modulus(*this, o);
  if (!p) {
    lit_ = checked_literal(static_cast<__int128>(lit_) * o.lit_);
    return *this;
  }
  const ModP a = bind(p), b = o.bind(p);
  *this = ModP(mulmod(a.v_, b.v_, p), p);
  return *this;
}

ModP& ModP::operator/=(const ModP& o) {
  const std::uint64_t p = common_modulus(*this, o);
  if (!p) return *this *= o.inverse();
  return *this = bind(p) * o.bind(p).inverse();
}

ModP operator-(const ModP& a) {
  if (!a.p_) return ModP(checked_literal(-static_cast<__int128>(a.lit_)));
  return ModP(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_);
}

bool operator==(const ModP& a, const ModP& b) {
  const std::uint64_t p = ModP::common_modulus(a, b);
  if (!p) return a.lit_ == b.lit_;
  return a.bind(p).v_ == b.bind(p).v_;
}

bool operator<(const ModP& a, const ModP& b) {
  const std::uint64_t p = ModP::common_modulus(a, b);
  if (!p) return a.lit_ < b.lit_;
  return a.bind(p).v_ < b.bind(p).v_;
}

std::string to_string(const ModP& x) {
  if (!x.bound()) return std::to_string(x.literal());
  const std::uint64_t v = x.residue(), p = x.modulus();
  if (v > p / 2) return "-" + std::to_string(p - v);
  return std::to_string(v);
}

ModP FieldTraits<ModP>::parse(const FieldSpec& f, const std::string& num, const std::string& den) {
  const std::uint64_t p = f.modulus();
  auto reduce = [p](const std::string& digits) {
    mpz_class z(digits, 10);
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return ModP(r.get_ui(), p);
  };
  ModP n = reduce(num);
  if (den.empty()) return n;
  ModP d = reduce(den);
  if (d.is_zero())
    throw Error(ErrorCode::InvalidArgument, "coefficient " + num + "/" + den + " is not in " + f.to_string());
  return n / d;
}

bool sqrt_mod(const ModP& a, ModP& root) {
  const std::uint64_t p = a.modulus();
  if (!a.bound()) throw Error(ErrorCode::InvalidArgument, "sqrt of an unbound literal");
  const std::uint64_t n = a.residue();
  if (n == 0) {
    root = ModP(0, p);
    return true;
  }
  if (p == 2) {
    root = a;
    return true;
  }
  if (powmod(n, (p - 1) / 2, p) != 1) return false;
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(n, q, p), r = powmod(n, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  root = ModP(r, p);
  return true;
}

}  // namespace ucl
