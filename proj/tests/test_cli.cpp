#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ucl/cli.hpp"
#include "ucl/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ucl::cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(UCL_DATA_DIR) + "/" + name; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ucl-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = (path / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }
};

nlohmann::json report(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", data("quadric_mf.pencil")}).code == 0);
  CHECK(run({"verify", data("block_quadric.pencil"), data("clock_shift_d3.pencil")}).code == 0);

  TempDir tmp;
  // bare phi read as a one-variable-per-entry pencil fails the relation
  const auto bad = tmp.file("bad.pencil", R"({"field": "QQ", "base_vars": 0, "fiber_vars": 4, "degree": 2, "size": 2,
    "f": "y0*y3 - y1*y2",
    "matrices": [[["1","0"],["0","0"]], [["0","1"],["0","0"]], [["0","0"],["1","0"]], [["0","0"],["0","1"]]]})");
  const Run r = run({"verify", "--json", bad});
  CHECK(r.code == 1);
  const auto j = report(r);
  CHECK(j["verdict"] == "fail");
  CHECK(j["checks"][0]["status"] == "fail");

  CHECK(run({"verify", tmp.file("broken.pencil", "{ not json")}).code == 3);
  CHECK(run({"verify", (tmp.path / "missing.pencil").string()}).code == 3);
  CHECK(run({"verify"}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"verify", "--help"}).code == 0);
}

TEST_CASE("construct writes verified pencils") {
  TempDir tmp;
  const auto out = tmp.file("h.pencil");
  CHECK(run({"construct", "hyperplane", "--field", "GF(7)", "--fiber-vars", "3", "--form", "y0 + 2*y1 + 3*y2", "-o",
             out})
            .code == 0);
  CHECK(run({"verify", out}).code == 0);

  const Run printed = run({"construct", "clock-shift", "--field", "GF(11)", "--roots", "1,2,3,4"});
  CHECK(printed.code == 0);
  const auto doc = ucl::parse_document(printed.out);
  CHECK(doc.size == 4);
  CHECK(doc.degree == 4);

  CHECK(run({"construct", "gamma", "--field", "GF(5)", "--coeffs", "1,1,1,1"}).code == 0);
  CHECK(run({"construct", "twist", data("block_quadric.pencil"), "--mult", "2"}).code == 0);
  CHECK(run({"construct", "sum", data("clock_shift_d3.pencil"), data("clock_shift_d3.pencil")}).code == 0);
  CHECK(run({"construct", "cyclic", "--field", "QQ", "--fiber-vars", "2", "--form", "y0*y1", "--factor", "y0",
             "--factor", "y1"})
            .code == 0);
  CHECK(run({"construct", "sum", data("clock_shift_d3.pencil"), data("block_quadric.pencil")}).code == 3);
  CHECK(run({"construct", "gamma", "--field", "GF(2)", "--coeffs", "1,1"}).code == 3);
  CHECK(run({"construct", "clock-shift", "--field", "GF(101)", "--roots", "1,1"}).code == 0);
}

TEST_CASE("equiv, irreducible, det") {
  TempDir tmp;
  const auto a = tmp.file("a.pencil");
  const auto b = tmp.file("b.pencil");
  run({"construct", "clock-shift", "--field", "GF(7)", "--roots", "1,2,4", "-o", a});
  run({"construct", "clock-shift", "--field", "GF(7)", "--roots", "2,4,1", "-o", b});
  const Run e = run({"equiv", "--json", "--seed", "3", a, b});
  CHECK(e.code == 0);
  CHECK(report(e)["verdict"] == "pass");

  const auto sum = tmp.file("sum.pencil");
  run({"construct", "sum", data("block_quadric.pencil"), data("block_quadric.pencil"), "-o", sum});
  CHECK(run({"equiv", data("block_quadric.pencil"), sum}).code == 1);  // sizes differ

  CHECK(run({"irreducible", data("block_quadric.pencil")}).code == 0);
  CHECK(run({"irreducible", data("clock_shift_d3.pencil")}).code == 0);
  CHECK(run({"irreducible", sum}).code == 1);

  const Run d = run({"det", "--json", data("clock_shift_d3.pencil")});
  CHECK(d.code == 0);
  CHECK(d.out.find("\"r\"") != std::string::npos);
}

TEST_CASE("ulrich-check and corpus mode") {
  CHECK(run({"ulrich-check", data("block_quadric.pencil")}).code == 0);
  CHECK(run({"ulrich-check", data("repeated_roots.pencil")}).code == 1);
  CHECK(run({"ulrich-check", "--at", "t1=3", "--at", "t1=-2", data("hyperplane_t1.pencil")}).code == 0);

  const Run c = run({"ulrich-check", "--corpus", UCL_DATA_DIR});
  CHECK(c.code == 1);
  std::istringstream lines(c.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "label,verdict,t,d,r,hilbert-ok,corank-ok");
  int rows = 0, passes = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.find(",pass,") != std::string::npos) ++passes;
    if (line.rfind("repeated-roots,", 0) == 0) CHECK(line.find(",fail,") != std::string::npos);
  }
  CHECK(rows == static_cast<int>(std::distance(fs::directory_iterator(UCL_DATA_DIR), fs::directory_iterator{})));
  CHECK(passes == rows - 1);
}

TEST_CASE("report verdicts agree with exit codes over the corpus") {
  for (const auto& entry : fs::directory_iterator(UCL_DATA_DIR)) {
    const Run r = run({"ulrich-check", "--json", "--seed", "1", entry.path().string()});
    const std::string verdict = report(r)["verdict"];
    CHECK(r.code == (verdict == "pass" ? 0 : verdict == "fail" ? 1 : 2));
    const Run v = run({"verify", "--json", entry.path().string()});
    CHECK(v.code == 0);
  }
}

TEST_CASE("specialize") {
  TempDir tmp;
  const auto out = tmp.file("s.pencil");
  CHECK(run({"specialize", data("hyperplane_t1.pencil"), "--at", "t1=5", "-o", out}).code == 0);
  const auto doc = ucl::read_document(out);
  CHECK(doc.base_vars == 0);
  CHECK(doc.f == "5*y0 + y1");
  CHECK(run({"specialize", data("hyperplane_t1.pencil"), "--at", "t9=5"}).code == 3);
}

TEST_CASE("cohomology exit codes") {
  const Run r = run({"cohomology", "--n", "3", "--d", "2", "--j", "2", "--json"});
  CHECK(r.code == 0);
  CHECK(run({"cohomology", "--n", "3", "--d", "2", "--assert-ulrich"}).code == 1);
  CHECK(run({"cohomology", "--n", "4", "--d", "1", "--assert-ulrich"}).code == 0);
  const Run csv = run({"cohomology", "--n", "3", "--d", "2", "--csv"});
  CHECK(csv.out.find("3,2,2,2,1") != std::string::npos);
  CHECK(run({"cohomology", "--n", "1", "--d", "2"}).code == 3);
}

TEST_CASE("search") {
  TempDir tmp;
  const Run r = run({"search", "--field", "GF(3)", "--form", "y0^2 - y1^2", "--degree", "2", "--size", "2", "--budget",
                     "20000", "--seed", "4", "--json", "--out-dir", tmp.path.string()});
  CHECK(r.code == 0);
  CHECK(!fs::is_empty(tmp.path));
  for (const auto& entry : fs::directory_iterator(tmp.path)) CHECK(run({"verify", entry.path().string()}).code == 0);
  CHECK(run({"search", "--field", "GF(3)", "--form", "y0^2 - y1^2", "--degree", "2", "--size", "2", "--budget", "0"})
            .code == 2);
}

TEST_CASE("replays are byte-identical") {
  const std::vector<std::vector<std::string>> cmds{
      {"ulrich-check", "--json", "--seed", "9", data("clock_shift_d3.pencil")},
      {"irreducible", "--json", "--seed", "9", data("block_quadric.pencil")},
      {"equiv", "--json", "--seed", "9", data("block_quadric.pencil"), data("block_quadric.pencil")},
      {"search", "--field", "GF(3)", "--form", "y0^2 - y1^2", "--degree", "2", "--size", "2", "--budget", "5000",
       "--seed", "9", "--threads", "2", "--json"}};
  for (const auto& cmd : cmds) {
    const Run a = run(cmd), b = run(cmd);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
