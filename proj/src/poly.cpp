#include "ucl/poly.hpp"

namespace ucl {

PolyRing::PolyRing(FieldSpec field, std::size_t base_vars, std::size_t fiber_vars)
    : field_(field), base_vars_(base_vars), fiber_vars_(fiber_vars) {
  if (fiber_vars < 1) throw Error(ErrorCode::InvalidArgument, "at least one fiber variable is required");
  if (base_vars + fiber_vars > kMaxVars)
    throw Error(ErrorCode::InvalidArgument, "at most " + std::to_string(kMaxVars) + " variables are supported");
  for (std::size_t i = 0; i < fiber_vars; ++i) names_.push_back("y" + std::to_string(i));
  for (std::size_t j = 1; j <= base_vars; ++j) names_.push_back("t" + std::to_string(j));
}

std::optional<std::size_t> PolyRing::find_var(const std::string& name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return k;
  return std::nullopt;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t k = 0; k < kMaxVars; ++k) {
    const unsigned e = unsigned{a.exp[k]} + b.exp[k];
    if (e > 0xFFFFu) throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 16 bits");
    r.exp[k] = static_cast<std::uint16_t>(e);
  }
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t k = 0; k < kMaxVars; ++k) {
    if (b.exp[k] > a.exp[k]) throw Error(ErrorCode::DivisionFails, "monomial does not divide");
    r.exp[k] = static_cast<std::uint16_t>(a.exp[k] - b.exp[k]);
  }
  return r;
}

}  // namespace ucl
