#ifndef UCL_IO_HPP
#define UCL_IO_HPP

// Text and JSON formats: polynomial strings, matrix strings, pencil documents
// and check reports.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ucl/check.hpp"
#include "ucl/clifford.hpp"

namespace ucl {

inline constexpr const char* kToolName = "ucl";
inline constexpr const char* kToolVersion = "1.0.0";

namespace detail {

/// Cursor over the input that tracks line and column (both 1-based).
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_ws() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) get();
  }
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1, col_ = 1;
};

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

inline std::string read_digits(Scanner& sc) {
  std::string s;
  while (is_digit(sc.peek())) s += sc.get();
  return s;
}

}  // namespace detail

/// Parses `[coeff][*]var[^exp]` products joined by `+`/`-`, e.g.
/// `y0*y3 - y1*y2` or `3/2*y0^2*t1`. Coefficients are reduced into the ring's
/// field. Errors carry the line and column of the offending character.
template <class S>
Poly<S> parse_poly(std::string_view text, const RingPtr& ring) {
  using Term = typename Poly<S>::Term;
  detail::Scanner sc(text);
  const FieldSpec& field = ring->field();
  std::vector<Term> terms;
  sc.skip_ws();
  if (sc.done()) sc.fail("empty polynomial");
  bool first = true;
  while (true) {
    sc.skip_ws();
    bool negative = false;
    if (sc.peek() == '+' || sc.peek() == '-') {
      negative = sc.get() == '-';
      sc.skip_ws();
    } else if (!first) {
      sc.fail(std::string("expected '+' or '-', found '") + sc.peek() + "'");
    }
    first = false;

    S coeff = FieldTraits<S>::from_int(field, negative ? -1 : 1);
    Monomial mono;
    bool have_factor = false;
    while (true) {
      sc.skip_ws();
      const char c = sc.peek();
      if (detail::is_digit(c)) {
        const std::size_t line = sc.line(), col = sc.column();
        const std::string num = detail::read_digits(sc);
        std::string den;
        if (sc.peek() == '/') {
          sc.get();
          if (!detail::is_digit(sc.peek())) sc.fail("expected a denominator after '/'");
          den = detail::read_digits(sc);
        }
        try {
          coeff *= FieldTraits<S>::parse(field, num, den);
        } catch (const Error&) {
          throw ParseError(std::string("coefficient ") + num + (den.empty() ? "" : "/" + den) + " is not in " +
                               field.to_string(),
                           line, col);
        }
      } else if (detail::is_alpha(c)) {
        const std::size_t line = sc.line(), col = sc.column();
        std::string name;
        while (detail::is_alpha(sc.peek())) name += sc.get();
        name += detail::read_digits(sc);
        const auto var = ring->find_var(name);
        if (!var) throw ParseError("unknown variable '" + name + "'", line, col);
        unsigned long e = 1;
        sc.skip_ws();
        if (sc.peek() == '^') {
          sc.get();
          sc.skip_ws();
          const std::string digits = detail::read_digits(sc);
          if (digits.empty()) sc.fail("expected an exponent after '^'");
          if (digits.size() > 5 || std::stoul(digits) > 65535) sc.fail("exponent too large");
          e = std::stoul(digits);
        }
        if (mono.exp[*var] + e > 65535) sc.fail("exponent too large");
        mono.exp[*var] = static_cast<std::uint16_t>(mono.exp[*var] + e);
      } else if (!have_factor) {
        if (sc.done()) sc.fail("unexpected end of input");
        sc.fail(std::string("unexpected '") + c + "'");
      } else {
        break;
      }
      have_factor = true;
      sc.skip_ws();
      if (sc.peek() == '*') {
        sc.get();
        sc.skip_ws();
        if (!detail::is_digit(sc.peek()) && !detail::is_alpha(sc.peek())) {
          if (sc.done()) sc.fail("unexpected end of input after '*'");
          sc.fail(std::string("unexpected '") + sc.peek() + "' after '*'");
        }
      }
    }
    terms.push_back({mono, coeff});
    sc.skip_ws();
    if (sc.done()) break;
  }
  return Poly<S>::from_terms(ring, std::move(terms));
}

/// Canonical form of a polynomial string.
template <class S>
std::string canonical_poly(std::string_view text, const RingPtr& ring) {
  return to_string(parse_poly<S>(text, ring));
}

/// Grid of entry strings from `a, b; c, d` (rows split on `;`, entries on `,`).
std::vector<std::vector<std::string>> split_matrix(std::string_view text);

template <class S>
PolyMatrix<S> parse_matrix(std::string_view text, const RingPtr& ring) {
  const auto grid = split_matrix(text);
  const auto rows = static_cast<Eigen::Index>(grid.size());
  const auto cols = static_cast<Eigen::Index>(grid.front().size());
  PolyMatrix<S> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(grid[static_cast<std::size_t>(i)].size()) != cols)
      throw Error(ErrorCode::ShapeMismatch, "matrix rows have different lengths");
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = parse_poly<S>(grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], ring);
  }
  return m;
}

using Grid = std::vector<std::vector<std::string>>;

template <class T>
Grid to_grid(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& m) {
  Grid g(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) g[static_cast<std::size_t>(i)].push_back(to_string(m(i, j)));
  return g;
}

// ---------------------------------------------------------------------------

/// JSON pencil file. A Clifford document carries `matrices`; a matrix
/// factorization document carries `phi` and `psi` instead.
struct PencilDocument {
  FieldSpec field = FieldSpec::rationals();
  std::size_t base_vars = 0;
  std::size_t fiber_vars = 1;
  unsigned degree = 1;
  Eigen::Index size = 0;
  std::string f;
  std::vector<Grid> matrices;
  std::optional<Grid> phi, psi;
  std::optional<std::string> label;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> provenance;
  std::vector<std::string> flags;

  bool is_mf() const { return phi.has_value(); }
  RingPtr ring() const { return make_ring(field, base_vars, fiber_vars); }
};

/// Parses and validates the JSON shape (not the polynomial entries).
PencilDocument parse_document(std::string_view json_text);
PencilDocument read_document(const std::string& path);
/// Stable key order, two-space indentation, trailing newline.
std::string write_document(const PencilDocument& doc);

template <class S>
CliffordRep<S> document_to_rep(const PencilDocument& doc) {
  if (doc.is_mf()) throw Error(ErrorCode::InvalidArgument, "document holds a matrix factorization, not a pencil");
  const RingPtr ring = doc.ring();
  std::vector<PolyMatrix<S>> coeffs;
  for (const auto& grid : doc.matrices) {
    PolyMatrix<S> a(doc.size, doc.size);
    for (Eigen::Index i = 0; i < doc.size; ++i)
      for (Eigen::Index j = 0; j < doc.size; ++j)
        a(i, j) = parse_poly<S>(grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], ring);
    coeffs.push_back(std::move(a));
  }
  return CliffordRep<S>(LinearPencil<S>(ring, std::move(coeffs)), parse_poly<S>(doc.f, ring), doc.degree, doc.flags);
}

template <class S>
MFPair<S> document_to_mf(const PencilDocument& doc) {
  if (!doc.is_mf()) throw Error(ErrorCode::InvalidArgument, "document does not hold a matrix factorization");
  const RingPtr ring = doc.ring();
  auto grid_matrix = [&](const Grid& g) {
    PolyMatrix<S> m(doc.size, doc.size);
    for (Eigen::Index i = 0; i < doc.size; ++i)
      for (Eigen::Index j = 0; j < doc.size; ++j)
        m(i, j) = parse_poly<S>(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], ring);
    return m;
  };
  return MFPair<S>{ring, grid_matrix(*doc.phi), grid_matrix(*doc.psi), parse_poly<S>(doc.f, ring)};
}

template <class S>
PencilDocument rep_to_document(const CliffordRep<S>& rep) {
  PencilDocument doc;
  doc.field = rep.field();
  doc.base_vars = rep.ring()->base_vars();
  doc.fiber_vars = rep.ring()->fiber_vars();
  doc.degree = rep.degree();
  doc.size = rep.size();
  doc.f = to_string(rep.form());
  for (const auto& a : rep.pencil().coefficients()) doc.matrices.push_back(to_grid(a));
  doc.flags = rep.flags();
  return doc;
}

template <class S>
PencilDocument mf_to_document(const MFPair<S>& mf) {
  PencilDocument doc;
  doc.field = mf.ring->field();
  doc.base_vars = mf.ring->base_vars();
  doc.fiber_vars = mf.ring->fiber_vars();
  doc.degree = 2;
  doc.size = mf.phi.rows();
  doc.f = to_string(mf.f);
  doc.phi = to_grid(mf.phi);
  doc.psi = to_grid(mf.psi);
  return doc;
}

/// Re-emits a document with every polynomial in canonical form.
PencilDocument canonicalize(const PencilDocument& doc);

// ---------------------------------------------------------------------------

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);
/// 0 pass, 1 fail, 2 inconclusive.
int exit_code(Verdict v);
/// Fail if any check failed, else inconclusive if any was, else pass.
Verdict combine(const std::vector<Check>& checks);

struct Report {
  std::string command;
  std::string input_digest;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Check> checks;
  std::vector<double> timings_ms;  // parallel to checks; empty unless requested
  Verdict verdict = Verdict::Pass;
};

/// Hex SHA-256 of the input bytes.
std::string sha256_hex(std::string_view bytes);

std::string report_json(const Report& r);
std::string report_text(const Report& r);

}  // namespace ucl

#endif  // UCL_IO_HPP
