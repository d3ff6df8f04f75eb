#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "ucl/io.hpp"

using namespace ucl;

namespace {

using P = Poly<Rational>;

template <class Fn>
void expect_parse_error(Fn&& fn, std::size_t line, std::size_t column) {
  try {
    fn();
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

template <class S>
Poly<S> random_poly(const RingPtr& ring, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 5), exp(0, 3), coef(-9, 9), den(1, 4);
  Poly<S> a(ring);
  for (int k = nterms(rng); k > 0; --k) {
    Poly<S> term = Poly<S>::constant(ring, FieldTraits<S>::from_int(ring->field(), coef(rng)));
    if constexpr (std::is_same_v<S, Rational>) term = term.scaled(Rational(mpq_class(1, den(rng))));
    for (std::size_t v = 0; v < ring->nvars(); ++v)
      for (int e = exp(rng); e > 0; --e) term = term * Poly<S>::variable(ring, v);
    a = a + term;
  }
  return a;
}

const char* kMf = R"({
  "field": "QQ",
  "base_vars": 0,
  "fiber_vars": 4,
  "degree": 2,
  "size": 2,
  "f": "y0*y3 - y1*y2",
  "phi": [["y0", "y1"], ["y2", "y3"]],
  "psi": [["y3", "-y1"], ["-y2", "y0"]]
})";

}  // namespace

TEST_CASE("parse_poly examples") {
  const RingPtr r4 = make_ring(FieldSpec::rationals(), 0, 4);
  const P f = parse_poly<Rational>("y0*y3 - y1*y2", r4);
  CHECK(f == P::y(r4, 0) * P::y(r4, 3) - P::y(r4, 1) * P::y(r4, 2));
  CHECK(to_string(f) == "y0*y3 - y1*y2");

  CHECK(parse_poly<Rational>("3y0", r4) == P::y(r4, 0).scaled(Rational(3)));
  CHECK(parse_poly<Rational>("3/2*y0^2", r4) == (P::y(r4, 0) * P::y(r4, 0)).scaled(Rational(mpq_class(3, 2))));
  CHECK(parse_poly<Rational>(" - y1 + 0", r4) == -P::y(r4, 1));
  CHECK(parse_poly<Rational>("y2 - y2", r4).is_zero());

  const FieldSpec gf7 = FieldSpec::prime(7);
  const RingPtr r2 = make_ring(gf7, 0, 2);
  const auto cube = parse_poly<ModP>("y0^3 + y1^3", r2);
  oracle::NPoly expect = oracle::var(2, 0, 1, 7) * oracle::var(2, 0, 1, 7) * oracle::var(2, 0, 1, 7) +
                         oracle::var(2, 1, 1, 7) * oracle::var(2, 1, 1, 7) * oracle::var(2, 1, 1, 7);
  CHECK(oracle::from_ucl(cube, 2, 7) == expect);
  CHECK(parse_poly<ModP>("8*y0", r2) == Poly<ModP>::y(r2, 0));
  CHECK(parse_poly<ModP>("6*y0", r2) == -Poly<ModP>::y(r2, 0));

  const RingPtr rt = make_ring(FieldSpec::rationals(), 2, 2);
  CHECK(parse_poly<Rational>("t1*y0 + t2^2*y1", rt) ==
        P::t(rt, 1) * P::y(rt, 0) + P::t(rt, 2) * P::t(rt, 2) * P::y(rt, 1));
}

TEST_CASE("parse_poly errors") {
  const RingPtr r4 = make_ring(FieldSpec::rationals(), 0, 4);
  CHECK_THROWS_AS(parse_poly<Rational>("", r4), ParseError);
  CHECK_THROWS_AS(parse_poly<Rational>("   ", r4), ParseError);
  expect_parse_error([&] { parse_poly<Rational>("y0 + y7", r4); }, 1, 6);
  expect_parse_error([&] { parse_poly<Rational>("y0 +\n  t1", r4); }, 2, 3);
  expect_parse_error([&] { parse_poly<Rational>("y0 y1 $", r4); }, 1, 7);
  expect_parse_error([&] { parse_poly<Rational>("y0*", r4); }, 1, 4);
  expect_parse_error([&] { parse_poly<Rational>("y0^", r4); }, 1, 4);
  expect_parse_error([&] { parse_poly<Rational>("1/ y0", r4); }, 1, 3);
  expect_parse_error([&] { parse_poly<Rational>("y0^99999", r4); }, 1, 9);

  const RingPtr r2 = make_ring(FieldSpec::prime(7), 0, 2);
  try {
    parse_poly<ModP>("1/7*y0", r2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.column() == 1);
    CHECK(std::string(e.what()).find("not in GF(7)") != std::string::npos);
  }
  CHECK(parse_poly<ModP>("1/3*y0", r2) == Poly<ModP>::y(r2, 0).scaled(ModP(5, 7)));
  try {
    parse_poly<Rational>("1/0", r4);
    FAIL("expected ParseError");
  } catch (const ParseError&) {
  }
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(21);
  int count = 0;
  for (const FieldSpec& field : {FieldSpec::rationals(), FieldSpec::prime(7), FieldSpec::prime(101)})
    for (std::size_t m : {0u, 1u, 2u})
      with_field(field, [&]<class S>() {
        const RingPtr ring = make_ring(field, m, 3);
        for (int k = 0; k < 20; ++k) {
          const auto a = random_poly<S>(ring, rng);
          const std::string text = to_string(a);
          const auto b = parse_poly<S>(text, ring);
          CHECK(b == a);
          CHECK(to_string(b) == text);
          ++count;
        }
      });
  CHECK(count >= 50);
}

TEST_CASE("canonical_poly is idempotent on hand-written strings") {
  const RingPtr ring = make_ring(FieldSpec::rationals(), 1, 3);
  const char* inputs[] = {"y2 + y0", "y0*y0", "2*y1 - y1", "y0^2*t1 + t1*y0^2", "1/2 + 1/3", "-y0 - 1",
                          "y1 y2 y0", "0*y0 + y1", "t1^3 - t1^3 + 4", "6/4*y2"};
  for (const char* s : inputs) {
    const std::string c = canonical_poly<Rational>(s, ring);
    CHECK(canonical_poly<Rational>(c, ring) == c);
  }
  CHECK(canonical_poly<Rational>("y2 + y0", ring) == "y0 + y2");
  CHECK(canonical_poly<Rational>("6/4*y2", ring) == "3/2*y2");
}

TEST_CASE("split_matrix and parse_matrix") {
  CHECK(split_matrix("a, b; c,d") == Grid{{"a", "b"}, {"c", "d"}});
  const RingPtr r4 = make_ring(FieldSpec::rationals(), 0, 4);
  const auto m = parse_matrix<Rational>("y0, y1; y2, y3", r4);
  CHECK(m.rows() == 2);
  CHECK(m(1, 0) == P::y(r4, 2));
  CHECK_THROWS_AS(parse_matrix<Rational>("y0, y1; y2", r4), Error);
}

TEST_CASE("document parse and validation") {
  const auto doc = parse_document(kMf);
  CHECK(doc.is_mf());
  CHECK(doc.size == 2);
  CHECK(doc.fiber_vars == 4);
  const auto mf = document_to_mf<Rational>(doc);
  CHECK(mf_verify(mf).pass);

  expect_parse_error([] { parse_document("{\n  \"field\": \"QQ\",,\n}"); }, 2, 17);
  CHECK_THROWS_AS(parse_document("[1, 2]"), Error);
  std::string unknown = kMf;
  unknown.insert(1, "\"colour\": \"red\",");
  CHECK_THROWS_WITH_AS(parse_document(unknown), doctest::Contains("unknown field 'colour'"), Error);
  std::string bad_field = kMf;
  bad_field.replace(bad_field.find("QQ"), 2, "RR");
  CHECK_THROWS_AS(parse_document(bad_field), Error);
  std::string no_psi = kMf;
  no_psi = no_psi.substr(0, no_psi.find(",\n  \"psi\"")) + "\n}";
  CHECK_THROWS_WITH_AS(parse_document(no_psi), doctest::Contains("both 'phi' and 'psi'"), Error);
  std::string wrong_size = kMf;
  wrong_size.replace(wrong_size.find("\"size\": 2"), 9, "\"size\": 3");
  CHECK_THROWS_AS(parse_document(wrong_size), Error);
}

TEST_CASE("document round trip") {
  auto block = fixtures::block_quadric();
  PencilDocument doc = rep_to_document(block);
  doc.label = "block";
  doc.seed = 42;
  const std::string text = write_document(doc);
  CHECK(text.find("[\"0\", \"0\", \"1\", \"0\"]") != std::string::npos);
  const auto back = parse_document(text);
  CHECK(write_document(back) == text);
  auto rep = document_to_rep<Rational>(back);
  CHECK(rep.pencil() == block.pencil());
  CHECK(rep.form() == block.form());
  CHECK(verify_relation(rep).pass);

  auto cs = fixtures::clock_shift(101, {1, 2, 4});
  const auto cs_doc = rep_to_document(cs);
  CHECK(document_to_rep<ModP>(parse_document(write_document(cs_doc))).pencil() == cs.pencil());

  const auto mf_text = write_document(parse_document(kMf));
  CHECK(write_document(parse_document(mf_text)) == mf_text);
}

TEST_CASE("canonicalize normalizes entries and keeps metadata") {
  std::string messy = kMf;
  messy.replace(messy.find("\"y0*y3 - y1*y2\""), 15, "\"-y2*y1 + y3*y0\"");
  messy.replace(messy.find("[\"y3\", \"-y1\"]"), 13, "[\"y3 + 0\", \"-1*y1\"]");
  messy.insert(1, "\"label\": \"m\",");
  const auto c = canonicalize(parse_document(messy));
  CHECK(c.f == "y0*y3 - y1*y2");
  CHECK((*c.psi)[0] == std::vector<std::string>{"y3", "-y1"});
  CHECK(c.label == std::optional<std::string>("m"));
  CHECK(write_document(canonicalize(c)) == write_document(c));
}

TEST_CASE("verdicts and exit codes") {
  CHECK(exit_code(Verdict::Pass) == 0);
  CHECK(exit_code(Verdict::Fail) == 1);
  CHECK(exit_code(Verdict::Inconclusive) == 2);
  Check pass{"a", Status::Pass, "", {}}, fail{"b", Status::Fail, "", {}}, inc{"c", Status::Inconclusive, "", {}},
      skip{"d", Status::Skipped, "", {}};
  CHECK(combine({}) == Verdict::Pass);
  CHECK(combine({pass, skip}) == Verdict::Pass);
  CHECK(combine({pass, inc}) == Verdict::Inconclusive);
  CHECK(combine({inc, fail, pass}) == Verdict::Fail);
}

TEST_CASE("sha256 and report determinism") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

  auto build = [] {
    auto block = fixtures::block_quadric();
    Report r;
    r.command = "verify";
    r.input_digest = sha256_hex(write_document(rep_to_document(block)));
    r.seed = 7;
    r.parameters = {{"max_degree", "6"}};
    r.checks.push_back(verify_relation(block).to_check());
    const auto det = det_factorization(block);
    r.checks.push_back(Check{"determinant", Status::Pass, "", {{"c", to_string(det.unit)}}});
    r.verdict = combine(r.checks);
    return r;
  };
  const Report a = build(), b = build();
  CHECK(report_json(a) == report_json(b));
  CHECK(report_text(a) == report_text(b));
  CHECK(report_json(a).find("\"timing_ms\"") == std::string::npos);
  CHECK(report_json(a).find("\"verdict\": \"pass\"") != std::string::npos);
  Report timed = a;
  timed.timings_ms = {1.0, 2.0};
  CHECK(report_json(timed).find("\"timing_ms\"") != std::string::npos);
}
