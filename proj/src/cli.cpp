#include "ucl/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ucl/cohomology.hpp"
#include "ucl/constructors.hpp"
#include "ucl/io.hpp"
#include "ucl/ulrich.hpp"

namespace ucl {

namespace fs = std::filesystem;

namespace {

constexpr int kInputError = 3;

struct Common {
  bool json = false;
  bool timing = false;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* app, Common& c, bool with_seed = true) {
  app->add_flag("--json", c.json, "Machine-readable JSON report");
  app->add_flag("--timing", c.timing, "Record per-check wall time (breaks byte-identical replay)");
  if (with_seed) app->add_option("--seed", c.seed, "Seed for randomized checks");
}

struct Input {
  std::string path;
  std::string bytes;
  PencilDocument doc;
  std::string label;
};

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Input inp{path, ss.str(), {}, {}};
  inp.doc = parse_document(inp.bytes);
  inp.label = inp.doc.label ? *inp.doc.label : fs::path(path).stem().string();
  return inp;
}

std::string digest_of(const std::vector<const Input*>& inputs) {
  std::string all;
  for (const auto* in : inputs) all += in->bytes;
  return sha256_hex(all);
}

class Runner {
 public:
  Runner(Report& r, bool timing) : report_(r), timing_(timing) {}
  template <class Fn>
  void run(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Check> checks = fn();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (auto& c : checks) {
      report_.checks.push_back(std::move(c));
      if (timing_) report_.timings_ms.push_back(ms);
    }
  }

 private:
  Report& report_;
  bool timing_;
};

int emit(Report& r, const Common& c, std::ostream& out) {
  r.verdict = combine(r.checks);
  out << (c.json ? report_json(r) : report_text(r));
  return exit_code(r.verdict);
}

std::string prefixed(const std::string& label, const std::string& name, bool use) {
  return use ? label + ":" + name : name;
}

template <class S>
S parse_scalar(const std::string& text, const RingPtr& ring) {
  const Poly<S> p = parse_poly<S>(text, ring);
  if (!p.is_constant()) throw Error(ErrorCode::InvalidArgument, "expected a constant, got '" + text + "'");
  return p.is_zero() ? FieldTraits<S>::from_int(ring->field(), 0) : p.constant_value();
}

template <class S>
std::vector<S> parse_scalar_list(const std::string& text, const RingPtr& ring) {
  std::vector<S> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar<S>(item, ring));
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty list");
  return out;
}

/// `t1=5,t2=-1` into a full base point for `ring`.
template <class S>
std::vector<S> parse_base_point(const std::string& text, const RingPtr& ring) {
  std::vector<std::optional<S>> vals(ring->base_vars());
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "expected name=value, got '" + item + "'");
    std::string name = item.substr(0, eq);
    name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
    const auto var = ring->find_var(name);
    if (!var || ring->is_fiber(*var)) throw Error(ErrorCode::UnknownVariable, "unknown base variable '" + name + "'");
    vals[*var - ring->fiber_vars()] = parse_scalar<S>(item.substr(eq + 1), ring);
  }
  std::vector<S> pt;
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (!vals[j]) throw Error(ErrorCode::PartialAssignment, "no value for " + ring->var_name(ring->t_index(j + 1)));
    pt.push_back(*vals[j]);
  }
  return pt;
}

/// Clifford representation of a document; matrix factorization documents
/// become their block representation.
template <class S>
CliffordRep<S> load_rep(const PencilDocument& doc) {
  if (doc.is_mf()) return block_from_mf(document_to_mf<S>(doc));
  return document_to_rep<S>(doc);
}

template <class S>
std::vector<Check> relation_checks(CliffordRep<S>& rep, const std::string& label, bool prefix) {
  std::vector<Check> out;
  auto rel = verify_relation(rep);
  Check rc = rel.to_check();
  rc.name = prefixed(label, rc.name, prefix);
  out.push_back(std::move(rc));
  if (!rel.pass) {
    out.push_back(Check{prefixed(label, "determinant", prefix), Status::Skipped, "relation failed", {}});
    return out;
  }
  try {
    const auto fac = det_factorization(rep);
    Check c{prefixed(label, "determinant", prefix), Status::Pass, "det M(y) = c * f^r", {}};
    c.witness.emplace_back("c", to_string(fac.unit));
    c.witness.emplace_back("r", std::to_string(fac.exponent));
    out.push_back(std::move(c));
  } catch (const Error& e) {
    Check c{prefixed(label, "determinant", prefix), Status::Fail, e.what(), {}};
    out.push_back(std::move(c));
  }
  return out;
}

template <class S>
Check mf_check(const MFPair<S>& mf, const std::string& name) {
  const auto r = mf_verify(mf);
  Check c{name, r.pass ? Status::Pass : Status::Fail,
          r.pass ? "phi*psi = psi*phi = f*I holds symbolically" : "not a matrix factorization of f", {}};
  c.witness.emplace_back("size", std::to_string(mf.phi.rows()));
  if (!r.pass) {
    c.witness.emplace_back("product", r.product);
    if (r.row >= 0) {
      c.witness.emplace_back("entry", "(" + std::to_string(r.row) + "," + std::to_string(r.col) + ")");
      c.witness.emplace_back("actual", to_string(r.actual));
      c.witness.emplace_back("expected", to_string(r.expected));
    }
  }
  return c;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  outf << text;
}

// -- verify ------------------------------------------------------------------

int cmd_verify(const std::vector<std::string>& files, Common& c, std::ostream& out) {
  std::vector<Input> inputs;
  for (const auto& f : files) inputs.push_back(load(f));
  Report r;
  r.command = "verify";
  std::vector<const Input*> ptrs;
  for (const auto& in : inputs) ptrs.push_back(&in);
  r.input_digest = digest_of(ptrs);
  Runner run(r, c.timing);
  const bool prefix = inputs.size() > 1;
  for (const auto& in : inputs) {
    with_field(in.doc.field, [&]<class S>() {
      if (in.doc.is_mf()) {
        run.run([&] { return std::vector<Check>{mf_check(document_to_mf<S>(in.doc), prefixed(in.label, "matrix_factorization", prefix))}; });
      } else {
        auto rep = document_to_rep<S>(in.doc);
        run.run([&] { return relation_checks(rep, in.label, prefix); });
      }
    });
  }
  return emit(r, c, out);
}

// -- construct ---------------------------------------------------------------

struct ConstructArgs {
  std::string field = "QQ";
  std::size_t fiber_vars = 0;
  std::size_t base_vars = 0;
  std::string form;
  std::string roots;
  std::string coeffs;
  std::vector<std::string> factors;
  unsigned degree = 0;
  std::string file, file2;
  std::size_t mult = 1;
  std::string label;
  std::string out;
};

template <class S>
CliffordRep<S> build(const std::string& kind, const ConstructArgs& a, std::vector<const Input*>& used,
                     std::vector<Input>& store) {
  const FieldSpec field = FieldSpec::parse(a.field);
  if (kind == "hyperplane") {
    if (a.fiber_vars == 0) throw Error(ErrorCode::InvalidArgument, "--fiber-vars is required");
    const RingPtr ring = make_ring(field, a.base_vars, a.fiber_vars);
    return hyperplane_rep(parse_poly<S>(a.form, ring));
  }
  if (kind == "clock-shift") {
    const RingPtr ring = make_ring(field, 0, 2);
    return clock_shift_rep(make_split_binary_form<S>(ring, parse_scalar_list<S>(a.roots, ring)));
  }
  if (kind == "gamma") {
    const RingPtr probe = make_ring(field, 0, 1);
    const auto co = parse_scalar_list<S>(a.coeffs, probe);
    return gamma_quadric_rep(make_ring(field, 0, co.size()), co);
  }
  if (kind == "cyclic") {
    if (a.fiber_vars == 0) throw Error(ErrorCode::InvalidArgument, "--fiber-vars is required");
    const RingPtr ring = make_ring(field, a.base_vars, a.fiber_vars);
    std::vector<PolyMatrix<S>> factors;
    for (const auto& m : a.factors) factors.push_back(parse_matrix<S>(m, ring));
    return cyclic_block_rep(ring, factors, parse_poly<S>(a.form, ring));
  }
  // file-based constructors
  store.reserve(2);
  store.push_back(load(a.file));
  used.push_back(&store.back());
  const auto& d1 = store.back().doc;
  if (kind == "block-mf") return block_from_mf(document_to_mf<S>(d1));
  auto rep = load_rep<S>(d1);
  verify_relation(rep);
  if (kind == "twist") return twist_by_free(rep, static_cast<Eigen::Index>(a.mult));
  if (kind == "sum") {
    store.push_back(load(a.file2));
    used.push_back(&store.back());
    if (!(store.back().doc.field == d1.field)) throw Error(ErrorCode::FieldMismatch, "inputs are over different fields");
    auto rep2 = load_rep<S>(store.back().doc);
    verify_relation(rep2);
    return direct_sum(rep, rep2);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown constructor " + kind);
}

int cmd_construct(const std::string& kind, const ConstructArgs& a, Common& c, const std::vector<std::string>& args,
                  std::ostream& out) {
  std::vector<Input> store;
  std::vector<const Input*> used;
  FieldSpec field = FieldSpec::parse(a.field);
  // file-based constructors work over the field of their input
  if (kind == "block-mf" || kind == "twist" || kind == "sum") field = load(a.file).doc.field;
  return with_field(field, [&]<class S>() {
    ConstructArgs aa = a;
    aa.field = field.to_string();
    CliffordRep<S> rep = build<S>(kind, aa, used, store);
    Report r;
    r.command = "construct " + kind;
    std::string spec;
    for (const auto& s : args) spec += s + "\n";
    for (const auto* in : used) spec += in->bytes;
    r.input_digest = sha256_hex(spec);
    Runner run(r, c.timing);
    run.run([&] { return relation_checks(rep, "", false); });
    PencilDocument doc = rep_to_document(rep);
    if (!a.label.empty()) doc.label = a.label;
    doc.provenance = "construct " + kind;
    const std::string text = write_document(doc);
    if (a.out.empty()) {
      out << text;
      return exit_code(combine(r.checks));
    }
    write_text_file(a.out, text);
    r.parameters.emplace_back("output", a.out);
    return emit(r, c, out);
  });
}

// -- equiv / irreducible / det / specialize -------------------------------------

int cmd_equiv(const std::string& fa, const std::string& fb, unsigned trials, unsigned max_t_degree, Common& c,
              std::ostream& out) {
  const Input a = load(fa), b = load(fb);
  if (!(a.doc.field == b.doc.field)) throw Error(ErrorCode::FieldMismatch, "inputs are over different fields");
  Report r;
  r.command = "equiv";
  r.input_digest = digest_of({&a, &b});
  r.seed = c.seed;
  r.parameters.emplace_back("trials", std::to_string(trials));
  r.parameters.emplace_back("max_t_degree", std::to_string(max_t_degree));
  Runner run(r, c.timing);
  with_field(a.doc.field, [&]<class S>() {
    auto ra = load_rep<S>(a.doc), rb = load_rep<S>(b.doc);
    bool ok = true;
    run.run([&] {
      auto ca = verify_relation(ra).to_check(), cb = verify_relation(rb).to_check();
      const bool same = a.label == b.label;
      ca.name = (same ? "a:" : a.label + ":") + "relation";
      cb.name = (same ? "b:" : b.label + ":") + "relation";
      ok = ca.status == Status::Pass && cb.status == Status::Pass;
      return std::vector<Check>{ca, cb};
    });
    if (!ok) {
      run.run([] { return std::vector<Check>{Check{"equivalence", Status::Skipped, "needs verified representations", {}}}; });
      return;
    }
    EquivalenceOptions opts;
    opts.seed = c.seed;
    opts.trials = trials;
    opts.max_t_degree = max_t_degree;
    run.run([&] { return std::vector<Check>{equivalence_test(ra, rb, opts).to_check()}; });
  });
  return emit(r, c, out);
}

int cmd_irreducible(const std::string& file, unsigned trials, const std::string& at, Common& c, std::ostream& out) {
  const Input in = load(file);
  Report r;
  r.command = "irreducible";
  r.input_digest = digest_of({&in});
  r.seed = c.seed;
  r.parameters.emplace_back("trials", std::to_string(trials));
  Runner run(r, c.timing);
  with_field(in.doc.field, [&]<class S>() {
    auto rep = load_rep<S>(in.doc);
    if (rep.ring()->base_vars() > 0) {
      if (at.empty()) throw Error(ErrorCode::Unsupported, "representation has base variables; pass --at t1=...");
      const auto pt = parse_base_point<S>(at, rep.ring());
      rep = CliffordRep<S>(specialize(rep.pencil(), pt), specialize(rep.form(), fiber_ring(rep.ring()), pt),
                           rep.degree(), rep.flags());
      r.parameters.emplace_back("base_point", at);
    }
    const auto rel = verify_relation(rep);
    run.run([&] { return std::vector<Check>{rel.to_check()}; });
    if (!rel.pass) {
      run.run([] { return std::vector<Check>{Check{"irreducibility", Status::Skipped, "relation failed", {}}}; });
      return;
    }
    IrreducibilityOptions opts;
    opts.seed = c.seed;
    opts.trials = trials;
    run.run([&] { return std::vector<Check>{irreducibility_check(rep, opts).to_check()}; });
  });
  return emit(r, c, out);
}

int cmd_det(const std::string& file, Common& c, std::ostream& out) {
  const Input in = load(file);
  Report r;
  r.command = "det";
  r.input_digest = digest_of({&in});
  Runner run(r, c.timing);
  with_field(in.doc.field, [&]<class S>() {
    auto rep = load_rep<S>(in.doc);
    run.run([&] {
      const auto rel = verify_relation(rep);
      std::vector<Check> checks{rel.to_check()};
      try {
        const auto fac = det_factorization(rep, !rel.pass);
        Check d{"determinant", Status::Pass, "det M(y) = c * f^r", {}};
        d.witness.emplace_back("det", to_string(fac.det));
        d.witness.emplace_back("c", to_string(fac.unit));
        d.witness.emplace_back("r", std::to_string(fac.exponent));
        if (rel.pass) d.witness.emplace_back("t/d", std::to_string(rel.index));
        checks.push_back(std::move(d));
      } catch (const Error& e) {
        Check d{"determinant", Status::Fail, e.what(), {}};
        d.witness.emplace_back("det", to_string(det(assemble(rep.pencil()))));
        checks.push_back(std::move(d));
      }
      return checks;
    });
  });
  return emit(r, c, out);
}

int cmd_specialize(const std::string& file, const std::string& at, const std::string& out_path, Common& c,
                   std::ostream& out) {
  const Input in = load(file);
  return with_field(in.doc.field, [&]<class S>() {
    auto rep = load_rep<S>(in.doc);
    const auto pt = parse_base_point<S>(at, rep.ring());
    CliffordRep<S> sp(specialize(rep.pencil(), pt), specialize(rep.form(), fiber_ring(rep.ring()), pt), rep.degree(),
                      rep.flags());
    Report r;
    r.command = "specialize";
    r.input_digest = digest_of({&in});
    r.parameters.emplace_back("base_point", at);
    Runner run(r, c.timing);
    run.run([&] {
      const auto before = verify_relation(rep);
      auto after = verify_relation(sp).to_check();
      after.name = "relation_at_point";
      Check bc{"base_change", Status::Pass, "relation over the base implies it on the fiber", {}};
      bc.witness.emplace_back("over_base", before.pass ? "pass" : "fail");
      bc.witness.emplace_back("at_point", to_string(after.status));
      if (before.pass && after.status != Status::Pass) bc.status = Status::Fail;
      return std::vector<Check>{after, bc};
    });
    PencilDocument doc = rep_to_document(sp);
    doc.label = in.label + "@" + at;
    doc.provenance = "specialize " + at;
    const std::string text = write_document(doc);
    if (out_path.empty()) {
      out << text;
      return exit_code(combine(r.checks));
    }
    write_text_file(out_path, text);
    r.parameters.emplace_back("output", out_path);
    return emit(r, c, out);
  });
}

// -- ulrich-check ------------------------------------------------------------

struct UlrichArgs {
  std::uint64_t prime = 101;
  unsigned max_degree = 6;
  std::size_t points = 50;
  std::size_t min_points = 20;
  std::vector<std::string> at;
  std::string corpus;
};

template <class S>
UlrichCertificate certify(const PencilDocument& doc, const UlrichArgs& a, std::uint64_t seed) {
  auto rep = load_rep<S>(doc);
  UlrichConfig cfg;
  cfg.max_degree = a.max_degree;
  cfg.sampling.prime = a.prime;
  cfg.sampling.on_points = a.points;
  cfg.sampling.off_points = a.points;
  cfg.sampling.min_points = a.min_points;
  cfg.sampling.seed = seed;
  for (const auto& s : a.at) {
    const auto pt = parse_base_point<S>(s, rep.ring());
    std::vector<long long> ints;
    for (const auto& v : pt) {
      const std::string txt = to_string(v);
      if (txt.find('/') != std::string::npos) throw Error(ErrorCode::InvalidArgument, "base points must be integers");
      ints.push_back(std::stoll(txt));
    }
    cfg.base_points.push_back(std::move(ints));
  }
  return ulrich_certificate(std::move(rep), cfg);
}

bool check_ok(const UlrichCertificate& cert, const std::string& name) {
  for (const auto& c : cert.checks)
    if (c.name == name) return c.status == Status::Pass;
  return false;
}

int cmd_ulrich(const std::vector<std::string>& files, const UlrichArgs& a, Common& c, std::ostream& out,
               std::ostream& err) {
  if (!a.corpus.empty()) {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(a.corpus))
      if (e.path().extension() == ".pencil") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    out << "label,verdict,t,d,r,hilbert-ok,corank-ok\n";
    int worst = 0;
    for (const auto& p : paths) {
      try {
        const Input in = load(p.string());
        const auto cert = with_field(in.doc.field, [&]<class S>() { return certify<S>(in.doc, a, c.seed); });
        const Verdict v = combine(cert.checks);
        out << in.label << "," << to_string(v) << "," << cert.size << "," << cert.degree << ","
            << (cert.index ? std::to_string(cert.index) : "") << "," << (check_ok(cert, "hilbert") ? "yes" : "no")
            << "," << (check_ok(cert, "corank") ? "yes" : "no") << "\n";
        worst = std::max(worst, exit_code(v));
      } catch (const Error& e) {
        err << p.string() << ": " << e.what() << "\n";
        out << p.stem().string() << ",error,,,,no,no\n";
        worst = kInputError;
      }
    }
    return worst;
  }
  if (files.size() != 1) throw Error(ErrorCode::InvalidArgument, "ulrich-check takes one pencil file or --corpus");
  const Input in = load(files.front());
  Report r;
  r.command = "ulrich-check";
  r.input_digest = digest_of({&in});
  r.seed = c.seed;
  r.parameters.emplace_back("prime", std::to_string(a.prime));
  r.parameters.emplace_back("max_degree", std::to_string(a.max_degree));
  r.parameters.emplace_back("points", std::to_string(a.points));
  Runner run(r, c.timing);
  run.run([&] { return with_field(in.doc.field, [&]<class S>() { return certify<S>(in.doc, a, c.seed); }).checks; });
  return emit(r, c, out);
}

// -- cohomology ----------------------------------------------------------------

int cmd_cohomology(int n, int d, int j, bool assert_ulrich, bool csv, Common& c, std::ostream& out) {
  std::vector<int> js;
  if (j > 0) {
    js.push_back(j);
  } else {
    for (int k = 1; k <= n - 1; ++k) js.push_back(k);
  }
  Report r;
  r.command = "cohomology";
  r.input_digest = sha256_hex("n=" + std::to_string(n) + ",d=" + std::to_string(d) + ",j=" + std::to_string(j));
  r.parameters.emplace_back("n", std::to_string(n));
  r.parameters.emplace_back("d", std::to_string(d));
  bool vanish = true;
  std::ostringstream table, csvs;
  table << "h^i(Y, O_Y(-j)) for a degree-" << d << " hypersurface in P^" << n << "\n" << std::setw(4) << "j";
  for (int i = 0; i < n; ++i) table << std::setw(8) << ("h^" + std::to_string(i));
  table << "\n";
  csvs << "n,d,j,i,h\n";
  for (int k : js) {
    const auto h = hypersurface_twist_cohomology(n, d, k);
    Check ck{"O_Y(-" + std::to_string(k) + ")", Status::Pass, "all cohomology vanishes", {}};
    table << std::setw(4) << k;
    for (std::size_t i = 0; i < h.size(); ++i) {
      table << std::setw(8) << h[i];
      csvs << n << "," << d << "," << k << "," << i << "," << h[i] << "\n";
      ck.witness.emplace_back("h^" + std::to_string(i), std::to_string(h[i]));
      if (h[i] != 0) {
        vanish = false;
        ck.status = assert_ulrich ? Status::Fail : Status::Pass;
        ck.detail = "nonzero cohomology";
      }
    }
    table << "\n";
    r.checks.push_back(std::move(ck));
  }
  if (c.json) return emit(r, c, out);
  out << (csv ? csvs.str() : table.str());
  if (assert_ulrich) out << (csv ? "" : (vanish ? "O_Y is Ulrich\n" : "O_Y is not Ulrich\n"));
  return assert_ulrich && !vanish ? 1 : 0;
}

// -- search --------------------------------------------------------------------

struct SearchArgs {
  std::string field;
  std::size_t fiber_vars = 2;
  std::string form;
  unsigned degree = 2;
  Eigen::Index size = 2;
  std::uint64_t budget = 100000;
  unsigned threads = 1;
  unsigned dedup_trials = 16;
  std::string out_dir;
};

int cmd_search(const SearchArgs& a, Common& c, const std::vector<std::string>& args, std::ostream& out) {
  const FieldSpec field = FieldSpec::parse(a.field);
  if (!field.is_prime_field()) throw Error(ErrorCode::Unsupported, "search runs over GF(p) only");
  Report r;
  r.command = "search";
  std::string spec;
  for (const auto& s : args)
    if (s != "--json" && s != "--timing") spec += s + "\n";
  r.input_digest = sha256_hex(spec);
  r.seed = c.seed;
  r.parameters.emplace_back("budget", std::to_string(a.budget));
  r.parameters.emplace_back("threads", std::to_string(a.threads));
  Runner run(r, c.timing);
  const RingPtr ring = make_ring(field, 0, a.fiber_vars);
  const auto f = parse_poly<ModP>(a.form, ring);
  SearchOptions opts;
  opts.seed = c.seed;
  opts.budget = a.budget;
  opts.threads = a.threads;
  opts.dedup_trials = a.dedup_trials;
  run.run([&] {
    auto res = random_search(ring, f, a.degree, a.size, opts);
    std::vector<Check> checks;
    Check s{"search", res.reps.empty() ? Status::Inconclusive : Status::Pass,
            res.reps.empty() ? "no representation found within the budget" : "representations found", {}};
    s.witness.emplace_back("samples", std::to_string(res.samples));
    s.witness.emplace_back("hits", std::to_string(res.hits));
    s.witness.emplace_back("distinct_pencils", std::to_string(res.distinct_pencils));
    s.witness.emplace_back("classes", std::to_string(res.reps.size()));
    checks.push_back(std::move(s));
    for (std::size_t k = 0; k < res.reps.size(); ++k) {
      auto& rep = res.reps[k];
      const std::string label = "rep" + std::to_string(k);
      auto rc = relation_checks(rep, label, true);
      Check& rel = rc.front();
      Check div{label + ":divisibility", rep.size() % rep.degree() == 0 ? Status::Pass : Status::Fail, "d | t", {}};
      rel.witness.emplace_back("pencil", write_document(rep_to_document(rep)));
      if (res.inconclusive[k]) rel.witness.emplace_back("note", "equivalence to an earlier class undecided");
      if (!a.out_dir.empty()) {
        fs::create_directories(a.out_dir);
        PencilDocument doc = rep_to_document(rep);
        doc.label = label;
        doc.seed = c.seed;
        doc.provenance = "search";
        write_text_file((fs::path(a.out_dir) / (label + ".pencil")).string(), write_document(doc));
      }
      for (auto& x : rc) checks.push_back(std::move(x));
      checks.push_back(std::move(div));
    }
    return checks;
  });
  return emit(r, c, out);
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificates for linear Clifford representations and Ulrich sheaves", "ucl"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);
  Common common;

  auto* verify = app.add_subcommand("verify", "Verify the Clifford relation (or a matrix factorization)");
  std::vector<std::string> verify_files;
  verify->add_option("files", verify_files, "Pencil files")->required()->check(CLI::ExistingFile);
  add_common(verify, common, false);

  auto* construct = app.add_subcommand("construct", "Build a representation and emit its pencil file");
  construct->require_subcommand(1);
  ConstructArgs ca;
  std::map<std::string, CLI::App*> kinds;
  for (const char* k : {"hyperplane", "clock-shift", "gamma", "block-mf", "cyclic", "twist", "sum"}) {
    auto* sub = construct->add_subcommand(k);
    kinds[k] = sub;
    sub->add_option("--label", ca.label, "Label stored in the document");
    sub->add_option("-o,--out", ca.out, "Write the pencil here and print the report");
    add_common(sub, common, false);
  }
  kinds["hyperplane"]->add_option("--field", ca.field)->capture_default_str();
  kinds["hyperplane"]->add_option("--fiber-vars", ca.fiber_vars)->required();
  kinds["hyperplane"]->add_option("--base-vars", ca.base_vars)->capture_default_str();
  kinds["hyperplane"]->add_option("--form", ca.form, "Linear form")->required();
  kinds["clock-shift"]->add_option("--field", ca.field)->capture_default_str();
  kinds["clock-shift"]->add_option("--roots", ca.roots, "Comma-separated roots c_k of f = prod(y0 + c_k y1)")->required();
  kinds["gamma"]->add_option("--field", ca.field)->capture_default_str();
  kinds["gamma"]->add_option("--coeffs", ca.coeffs, "Comma-separated a_i of f = sum a_i y_i^2")->required();
  kinds["block-mf"]->add_option("file", ca.file, "Matrix factorization document")->required()->check(CLI::ExistingFile);
  kinds["cyclic"]->add_option("--field", ca.field)->capture_default_str();
  kinds["cyclic"]->add_option("--fiber-vars", ca.fiber_vars)->required();
  kinds["cyclic"]->add_option("--base-vars", ca.base_vars)->capture_default_str();
  kinds["cyclic"]->add_option("--form", ca.form)->required();
  kinds["cyclic"]->add_option("--factor", ca.factors, "Factor matrix `a,b;c,d` (repeat, in order)")->required();
  kinds["twist"]->add_option("file", ca.file)->required()->check(CLI::ExistingFile);
  kinds["twist"]->add_option("--mult", ca.mult, "Rank of the free module")->required()->check(CLI::PositiveNumber);
  kinds["sum"]->add_option("file", ca.file)->required()->check(CLI::ExistingFile);
  kinds["sum"]->add_option("file2", ca.file2)->required()->check(CLI::ExistingFile);

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two representations");
  std::string eq_a, eq_b;
  unsigned eq_trials = 64, eq_degree = 2;
  equiv->add_option("a", eq_a)->required()->check(CLI::ExistingFile);
  equiv->add_option("b", eq_b)->required()->check(CLI::ExistingFile);
  equiv->add_option("--trials", eq_trials, "Random trials for the invertible search")->capture_default_str();
  equiv->add_option("--max-t-degree", eq_degree, "Bound on the t-degree of theta")->capture_default_str();
  add_common(equiv, common);

  auto* irreducible = app.add_subcommand("irreducible", "Certify absolute irreducibility");
  std::string irr_file, irr_at;
  unsigned irr_trials = 32;
  irreducible->add_option("file", irr_file)->required()->check(CLI::ExistingFile);
  irreducible->add_option("--trials", irr_trials)->capture_default_str();
  irreducible->add_option("--at", irr_at, "Base point t1=..,t2=.. when the base is nontrivial");
  add_common(irreducible, common);

  auto* ulrich = app.add_subcommand("ulrich-check", "Certify the cokernel as an Ulrich sheaf");
  std::vector<std::string> ul_files;
  UlrichArgs ua;
  ulrich->add_option("files", ul_files)->check(CLI::ExistingFile);
  ulrich->add_option("--corpus", ua.corpus, "Run every .pencil file in a directory, CSV summary")->check(CLI::ExistingDirectory);
  ulrich->add_option("--prime", ua.prime, "Prime for sampling rational representations")->capture_default_str();
  ulrich->add_option("--max-degree", ua.max_degree, "Largest degree of the Hilbert function check")->capture_default_str();
  ulrich->add_option("--points", ua.points, "Sample points on and off the hypersurface")->capture_default_str();
  ulrich->add_option("--min-points", ua.min_points, "Fewest smooth and off points that count")->capture_default_str();
  ulrich->add_option("--at", ua.at, "Base point t1=..; repeatable")->allow_extra_args(false);
  add_common(ulrich, common);

  auto* detc = app.add_subcommand("det", "Factor det M(y) as c * f^r");
  std::string det_file;
  detc->add_option("file", det_file)->required()->check(CLI::ExistingFile);
  add_common(detc, common, false);

  auto* spec = app.add_subcommand("specialize", "Substitute base variables");
  std::string sp_file, sp_at, sp_out;
  spec->add_option("file", sp_file)->required()->check(CLI::ExistingFile);
  spec->add_option("--at", sp_at, "t1=..,t2=..")->required();
  spec->add_option("-o,--out", sp_out, "Write the pencil here and print the report");
  add_common(spec, common, false);

  auto* coh = app.add_subcommand("cohomology", "Cohomology of O_Y(-j) on a hypersurface");
  int coh_n = 0, coh_d = 0, coh_j = 0;
  bool coh_assert = false, coh_csv = false;
  coh->add_option("--n", coh_n, "Ambient P^n")->required()->check(CLI::Range(2, 1000));
  coh->add_option("--d", coh_d, "Degree")->required()->check(CLI::PositiveNumber);
  coh->add_option("--j", coh_j, "Single twist (default: all 1..n-1)");
  coh->add_flag("--assert-ulrich", coh_assert, "Exit 1 unless all listed cohomology vanishes");
  coh->add_flag("--csv", coh_csv, "CSV output");
  add_common(coh, common, false);

  auto* search = app.add_subcommand("search", "Random search for representations over GF(p)");
  SearchArgs sa;
  search->add_option("--field", sa.field)->required();
  search->add_option("--fiber-vars", sa.fiber_vars)->capture_default_str();
  search->add_option("--form", sa.form)->required();
  search->add_option("--degree", sa.degree)->required();
  search->add_option("--size", sa.size)->required();
  search->add_option("--budget", sa.budget)->capture_default_str();
  search->add_option("--threads", sa.threads)->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--dedup-trials", sa.dedup_trials)->capture_default_str();
  search->add_option("--out-dir", sa.out_dir, "Write found representations here");
  add_common(search, common);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*verify) return cmd_verify(verify_files, common, out);
    if (*construct) {
      for (const auto& [name, sub] : kinds)
        if (*sub) return cmd_construct(name, ca, common, args, out);
    }
    if (*equiv) return cmd_equiv(eq_a, eq_b, eq_trials, eq_degree, common, out);
    if (*irreducible) return cmd_irreducible(irr_file, irr_trials, irr_at, common, out);
    if (*ulrich) return cmd_ulrich(ul_files, ua, common, out, err);
    if (*detc) return cmd_det(det_file, common, out);
    if (*spec) return cmd_specialize(sp_file, sp_at, sp_out, common, out);
    if (*coh) return cmd_cohomology(coh_n, coh_d, coh_j, coh_assert, coh_csv, common, out);
    if (*search) return cmd_search(sa, common, args, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

int cli_dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace ucl
