#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "stmod/cli.hpp"

using namespace stmod;

namespace {

std::string writeTemp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/stmod_cli_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

const char* kA2Algebra = R"({
  "field": 2,
  "name": "A2",
  "quiver": {
    "vertices": ["1", "2"],
    "arrows": [{"name": "a", "from": "1", "to": "2"}]
  }
})";

const char* kS1Module = R"({
  "name": "S1",
  "vertex_dimensions": {"1": 1, "2": 0},
  "arrows": {}
})";

}  // namespace

TEST_CASE("algebra files build bound quiver algebras") {
  std::string path = writeTemp("a2.json", kA2Algebra);
  AlgebraPtr a = loadAlgebra(path);
  CHECK(a->dim == 3);
  CHECK(a->idempotents.size() == 2);
  // loading twice returns the same object
  CHECK(loadAlgebra(path).get() == a.get());
}

TEST_CASE("relations are parsed and imposed") {
  std::string path = writeTemp("loop.json", R"({
    "field": 2,
    "quiver": {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]},
    "relations": ["x*x"],
    "nilpotency_cap": 6
  })");
  AlgebraPtr a = loadAlgebra(path);
  CHECK(a->dim == 2);  // 1 and x
  CHECK(isSelfInjective(a));
}

TEST_CASE("module files in arrow form load and validate") {
  AlgebraPtr a = loadAlgebra(writeTemp("a2b.json", kA2Algebra));
  Module s1 = loadModule(a, writeTemp("s1.json", kS1Module));
  CHECK(s1.dim == 1);
  CHECK(!isProjectiveModule(s1));
  Module p1 = loadModule(a, writeTemp("p1.json", R"({
    "vertex_dimensions": {"1": 1, "2": 1},
    "arrows": {"a": [[1]]}
  })"));
  CHECK(p1.dim == 2);
  CHECK(isProjectiveModule(p1));
}

TEST_CASE("unknown keys are rejected everywhere") {
  std::string bad1 = writeTemp("bad1.json", R"({"field": 2, "quiver": {"vertices": ["1"], "arrows": []}, "extra": 1})");
  CHECK_THROWS(loadAlgebra(bad1));
  AlgebraPtr a = loadAlgebra(writeTemp("a2c.json", kA2Algebra));
  std::string bad2 = writeTemp("bad2.json", R"({"vertex_dimensions": {"1": 1}, "typo": []})");
  CHECK_THROWS(loadModule(a, bad2));
}

TEST_CASE("hull-test on the complete resolution reports InL and exits 0") {
  RunConfig cfg;
  cfg.command = "hull-test";
  cfg.algebra = writeTemp("a2d.json", kA2Algebra);
  cfg.module = writeTemp("s1b.json", kS1Module);
  cfg.windowLo = -4;
  cfg.windowHi = 4;
  cfg.format = "json";
  RunResult r = run(cfg);
  CHECK(r.exitCode == 0);
  CHECK(r.report.find("\"verdict\": \"InL\"") != std::string::npos);

  // for S1 the resolution coincides with the complete resolution: still InL
  cfg.complexKind = "resolution";
  RunResult r2 = run(cfg);
  CHECK(r2.exitCode == 0);
  CHECK(r2.report.find("\"verdict\": \"InL\"") != std::string::npos);

  // the stalk of the projective P1 lies between the two perpendicular hulls
  cfg.complexKind = "stalk";
  cfg.module = writeTemp("p1b.json", R"({
    "vertex_dimensions": {"1": 1, "2": 1},
    "arrows": {"a": [[1]]}
  })");
  RunResult r3 = run(cfg);
  CHECK(r3.exitCode == 0);
  CHECK(r3.report.find("\"verdict\": \"InHstp\"") != std::string::npos);
  CHECK(r3.report.find("\"inHP\": false") != std::string::npos);
}

TEST_CASE("self-injective suite over the dual numbers is all-true") {
  RunConfig cfg;
  cfg.command = "self-injective";
  cfg.algebra = "dual-numbers";
  cfg.windowLo = -4;
  cfg.windowHi = 4;
  cfg.format = "json";
  RunResult r = run(cfg);
  CHECK(r.exitCode == 0);
  CHECK(r.report.find("\"selfInjective\": true") != std::string::npos);
  CHECK(r.report.find("\"consistent\": true") != std::string::npos);
}

TEST_CASE("grothendieck verbs emit the group data") {
  RunConfig cfg;
  cfg.command = "g0p";
  cfg.algebra = "dual-numbers";
  cfg.format = "json";
  RunResult r = run(cfg);
  CHECK(r.exitCode == 0);
  CHECK(r.report.find("\"exactnessStamp\": \"exact\"") != std::string::npos);
  CHECK(r.report.find("\"freeRank\": 0") != std::string::npos);
  CHECK(r.report.find("\"2\"") != std::string::npos);

  cfg.command = "g0st";
  cfg.algebra = "a2";
  RunResult r2 = run(cfg);
  CHECK(r2.exitCode == 0);
  CHECK(r2.report.find("\"freeRank\": 0") != std::string::npos);
}

TEST_CASE("reports are byte-identical for identical configs") {
  RunConfig cfg;
  cfg.command = "sigma-check";
  cfg.algebra = "cyclic-nakayama";
  cfg.windowLo = -4;
  cfg.windowHi = 4;
  cfg.format = "json";
  cfg.seed = 7;
  RunResult r1 = run(cfg);
  RunResult r2 = run(cfg);
  CHECK(r1.exitCode == 0);
  CHECK(r1.report == r2.report);
  CHECK(r1.report.find("\"allOk\": true") != std::string::npos);
}

TEST_CASE("errors exit with code 1 and a message") {
  RunConfig cfg;
  cfg.command = "resolve";
  cfg.algebra = writeTemp("broken.json", "{ not json");
  cfg.module = "/nonexistent";
  RunResult r = run(cfg);
  CHECK(r.exitCode == 1);
  CHECK(r.report.find("error:") == 0);

  RunConfig bad;
  bad.command = "kato";
  bad.algebra = "a2";
  bad.windowLo = 2;  // window must contain 0
  RunResult r2 = run(bad);
  CHECK(r2.exitCode == 1);

  RunConfig unknown;
  unknown.command = "frobnicate";
  unknown.algebra = "a2";
  RunResult r3 = run(unknown);
  CHECK(r3.exitCode == 1);
}

TEST_CASE("morita-check with builtin pairs") {
  RunConfig cfg;
  cfg.command = "morita-check";
  cfg.algebra = "a2";
  cfg.pair = "matrix2";
  cfg.format = "json";
  RunResult r = run(cfg);
  CHECK(r.exitCode == 0);
  CHECK(r.report.find("\"verified\": true") != std::string::npos);

  cfg.pair = "identity";
  cfg.algebra = "dual-numbers";
  RunResult r2 = run(cfg);
  CHECK(r2.exitCode == 0);
  CHECK(r2.report.find("\"verified\": true") != std::string::npos);
}

TEST_CASE("bimodule files load and verify") {
  // the regular bimodule of the dual numbers written out explicitly
  AlgebraPtr k2 = loadAlgebra("dual-numbers");
  Bimodule reg = regularBimodule(k2);
  auto dumpActions = [&](const std::vector<FpMatrix>& ms) {
    std::string out = "[";
    for (size_t i = 0; i < ms.size(); ++i) {
      if (i) out += ",";
      out += "[";
      for (int r = 0; r < ms[i].rows(); ++r) {
        if (r) out += ",";
        out += "[";
        for (int c = 0; c < ms[i].cols(); ++c) {
          if (c) out += ",";
          out += std::to_string(int(ms[i].at(r, c)));
        }
        out += "]";
      }
      out += "]";
    }
    return out + "]";
  };
  std::string body = std::string("{\"left\": \"dual-numbers\", \"right\": \"dual-numbers\", ") +
                     "\"dimension\": 2, \"left_action\": " + dumpActions(reg.leftActions()) +
                     ", \"right_action\": " + dumpActions(reg.rightActions()) + "}";
  std::string path = writeTemp("regbimod.json", body);
  Bimodule loaded = loadBimodule(path);
  CHECK(loaded.dim() == 2);
  MoritaReport rep = verifyStableMoritaType(loaded, loaded);
  CHECK(rep.verified);
}
