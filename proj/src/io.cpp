#include "ucl/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>
#include <sodium.h>

namespace ucl {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Parse, "pencil document: " + what); }

std::size_t get_count(const ordered_json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) bad(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string get_string(const ordered_json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Grid get_grid(const ordered_json& v, std::size_t size, const std::string& what) {
  if (!v.is_array() || v.size() != size) bad(what + " must have " + std::to_string(size) + " rows");
  Grid g;
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != size) bad(what + " rows must have " + std::to_string(size) + " entries");
    std::vector<std::string> r;
    for (const auto& e : row) {
      if (!e.is_string()) bad(what + " entries must be polynomial strings");
      r.push_back(e.get<std::string>());
    }
    g.push_back(std::move(r));
  }
  return g;
}

}  // namespace

std::vector<std::vector<std::string>> split_matrix(std::string_view text) {
  std::vector<std::vector<std::string>> grid;
  if (trim(text).empty()) throw Error(ErrorCode::Parse, "empty matrix");
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    std::vector<std::string> row;
    const auto line = text.substr(start, end - start);
    std::size_t s = 0;
    while (s <= line.size()) {
      const auto e = std::min(line.find(',', s), line.size());
      row.push_back(trim(line.substr(s, e - s)));
      s = e + 1;
    }
    grid.push_back(std::move(row));
    start = end + 1;
  }
  return grid;
}

PencilDocument parse_document(std::string_view json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = locate(json_text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("invalid JSON", line, col);
  }
  if (!j.is_object()) bad("top level must be an object");
  PencilDocument doc;
  try {
    doc.field = FieldSpec::parse(get_string(j, "field"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    bad(e.what());
  }
  doc.base_vars = get_count(j, "base_vars");
  doc.fiber_vars = get_count(j, "fiber_vars");
  if (doc.fiber_vars < 1) bad("fiber_vars must be at least 1");
  if (doc.base_vars + doc.fiber_vars > kMaxVars) bad("too many variables");
  doc.degree = static_cast<unsigned>(get_count(j, "degree"));
  if (doc.degree < 1) bad("degree must be at least 1");
  doc.size = static_cast<Eigen::Index>(get_count(j, "size"));
  if (doc.size < 1) bad("size must be at least 1");
  doc.f = get_string(j, "f");
  const auto size = static_cast<std::size_t>(doc.size);
  if (j.contains("phi") || j.contains("psi")) {
    if (!j.contains("phi") || !j.contains("psi")) bad("a matrix factorization needs both 'phi' and 'psi'");
    if (j.contains("matrices")) bad("'matrices' cannot be combined with 'phi'/'psi'");
    doc.phi = get_grid(j.at("phi"), size, "phi");
    doc.psi = get_grid(j.at("psi"), size, "psi");
  } else {
    if (!j.contains("matrices")) bad("missing field 'matrices'");
    const auto& ms = j.at("matrices");
    if (!ms.is_array() || ms.size() != doc.fiber_vars)
      bad("'matrices' must list one matrix per fiber variable (" + std::to_string(doc.fiber_vars) + ")");
    for (std::size_t i = 0; i < ms.size(); ++i) doc.matrices.push_back(get_grid(ms[i], size, "matrix " + std::to_string(i)));
  }
  if (j.contains("label")) doc.label = get_string(j, "label");
  if (j.contains("provenance")) doc.provenance = get_string(j, "provenance");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) bad("field 'seed' must be a non-negative integer");
    doc.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("flags")) {
    const auto& fl = j.at("flags");
    if (!fl.is_array()) bad("'flags' must be a list of strings");
    for (const auto& f : fl) {
      if (!f.is_string()) bad("'flags' must be a list of strings");
      doc.flags.push_back(f.get<std::string>());
    }
  }
  static const char* known[] = {"field", "base_vars", "fiber_vars", "degree", "size",  "f",    "matrices",
                                "phi",   "psi",       "label",      "seed",   "provenance", "flags"};
  for (const auto& [key, _] : j.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) bad("unknown field '" + key + "'");
  return doc;
}

PencilDocument read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string write_document(const PencilDocument& doc) {
  ordered_json j;
  if (doc.label) j["label"] = *doc.label;
  j["field"] = doc.field.to_string();
  j["base_vars"] = doc.base_vars;
  j["fiber_vars"] = doc.fiber_vars;
  j["degree"] = doc.degree;
  j["size"] = doc.size;
  j["f"] = doc.f;
  if (doc.is_mf()) {
    j["phi"] = nullptr;
    j["psi"] = nullptr;
  } else {
    j["matrices"] = nullptr;
  }
  if (!doc.flags.empty()) j["flags"] = doc.flags;
  if (doc.seed) j["seed"] = *doc.seed;
  if (doc.provenance) j["provenance"] = *doc.provenance;

  // grids keep one matrix row per line
  auto grid_text = [](const Grid& g, const std::string& indent) {
    std::string s = "[\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
      s += indent + "  [";
      for (std::size_t k = 0; k < g[i].size(); ++k) s += (k ? ", " : "") + ordered_json(g[i][k]).dump();
      s += i + 1 < g.size() ? "],\n" : "]\n";
    }
    return s + indent + "]";
  };
  std::string out = "{\n";
  std::size_t n = 0;
  for (const auto& [key, value] : j.items()) {
    out += "  " + ordered_json(key).dump() + ": ";
    if (key == "phi") {
      out += grid_text(*doc.phi, "  ");
    } else if (key == "psi") {
      out += grid_text(*doc.psi, "  ");
    } else if (key == "matrices") {
      out += "[\n";
      for (std::size_t k = 0; k < doc.matrices.size(); ++k)
        out += "    " + grid_text(doc.matrices[k], "    ") + (k + 1 < doc.matrices.size() ? ",\n" : "\n");
      out += "  ]";
    } else {
      out += value.dump();
    }
    out += ++n < j.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

PencilDocument canonicalize(const PencilDocument& doc) {
  return with_field(doc.field, [&]<class S>() {
    PencilDocument out = doc.is_mf() ? mf_to_document(document_to_mf<S>(doc)) : rep_to_document(document_to_rep<S>(doc));
    out.label = doc.label;
    out.seed = doc.seed;
    out.provenance = doc.provenance;
    out.flags = doc.flags;
    return out;
  });
}

// ---------------------------------------------------------------------------

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 3;
}

Verdict combine(const std::vector<Check>& checks) {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.status == Status::Fail) return Verdict::Fail;
    if (c.status == Status::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Pass;
}

std::string sha256_hex(std::string_view bytes) {
  if (sodium_init() < 0) throw Error(ErrorCode::InternalInconsistency, "libsodium failed to initialise");
  unsigned char out[crypto_hash_sha256_BYTES];
  crypto_hash_sha256(out, reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
  char hex[2 * crypto_hash_sha256_BYTES + 1];
  sodium_bin2hex(hex, sizeof hex, out, sizeof out);
  return hex;
}

std::string report_json(const Report& r) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = r.command;
  j["input_digest"] = r.input_digest;
  if (r.seed) j["seed"] = *r.seed;
  if (!r.parameters.empty()) {
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : r.parameters) p[k] = v;
    j["parameters"] = std::move(p);
  }
  ordered_json checks = ordered_json::array();
  for (std::size_t k = 0; k < r.checks.size(); ++k) {
    const auto& c = r.checks[k];
    ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = to_string(c.status);
    cj["detail"] = c.detail;
    // witness keys may repeat, so it is a list of pairs
    ordered_json w = ordered_json::array();
    for (const auto& [key, value] : c.witness) w.push_back(ordered_json::array({key, value}));
    cj["witness"] = std::move(w);
    if (k < r.timings_ms.size()) cj["timing_ms"] = r.timings_ms[k];
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["verdict"] = to_string(r.verdict);
  return j.dump(2) + "\n";
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << kToolName << " " << kToolVersion << "  " << r.command << "\n";
  os << "input sha256 " << r.input_digest << "\n";
  if (r.seed) os << "seed " << *r.seed << "\n";
  for (const auto& [k, v] : r.parameters) os << k << " = " << v << "\n";
  for (std::size_t k = 0; k < r.checks.size(); ++k) {
    const auto& c = r.checks[k];
    os << "[" << to_string(c.status) << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    if (k < r.timings_ms.size()) os << " (" << std::fixed << std::setprecision(1) << r.timings_ms[k] << " ms)";
    os << "\n";
    for (const auto& [key, value] : c.witness) {
      std::string v = value;
      for (std::size_t p = v.find('\n'); p != std::string::npos; p = v.find('\n', p + 1)) v.insert(p + 1, "      ");
      os << "    " << key << ": " << v << "\n";
    }
  }
  os << "verdict: " << to_string(r.verdict) << "\n";
  return os.str();
}

}  // namespace ucl
