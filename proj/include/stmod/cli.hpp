#pragma once

// Command line front end: load algebra / module / bimodule descriptions,
// dispatch to the computational verbs, and render text or JSON reports.

#include <iosfwd>
#include <string>

#include "stmod/grothendieck.hpp"
#include "stmod/morita.hpp"

namespace stmod {

struct RunConfig {
  std::string command;
  std::string algebra;        // path to an algebra file, or a builtin name
  std::string module;         // path to a module file (verbs that need one)
  std::string bimoduleM, bimoduleN;  // bimodule files for morita-check
  std::string pair;           // builtin bimodule pair: "identity" or "matrix2"
  std::string complexKind = "kato";  // hull-test input: kato | resolution | stalk
  int windowLo = -8, windowHi = 8;
  int dimCap = 12;
  uint64_t seed = 0;
  std::string format = "text";  // text | json
  int trialBudget = 512;
};

struct RunResult {
  int exitCode = 0;  // 0 success, 2 inconclusive, 1 error
  std::string report;
};

RunResult run(const RunConfig& cfg);

// Input-file loaders, exposed for tests.  `ref` is a file path or one of the
// builtin names: a2, dual-numbers, cyclic-nakayama (optionally with ":p"
// appended, e.g. "dual-numbers:3").
AlgebraPtr loadAlgebra(const std::string& ref);
Module loadModule(const AlgebraPtr& a, const std::string& path);
Bimodule loadBimodule(const std::string& path);

}  // namespace stmod
