#include <CLI11.hpp>

#include <iostream>

#include "stmod/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"stmod: stable module categories over finite-dimensional algebras"};
  app.require_subcommand(1);

  stmod::RunConfig cfg;
  std::string window;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--algebra", cfg.algebra, "algebra file or builtin name (a2, dual-numbers, cyclic-nakayama)");
    sub->add_option("--module", cfg.module, "module file");
    sub->add_option("--window", window, "degree window a:b (default -8:8)");
    sub->add_option("--dim-cap", cfg.dimCap, "dimension cap for pool construction");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--format", cfg.format, "text or json");
    sub->add_option("--trial-budget", cfg.trialBudget, "budget for randomized checks");
  };

  for (const char* name : {"resolve", "kato", "hull-test", "stp", "nu-domdim", "self-injective",
                           "g0p", "g0st", "sigma-check", "morita-check"}) {
    CLI::App* sub = app.add_subcommand(name);
    addCommon(sub);
    if (std::string(name) == "hull-test")
      sub->add_option("--complex", cfg.complexKind, "kato, resolution, or stalk");
    if (std::string(name) == "morita-check") {
      sub->add_option("--m", cfg.bimoduleM, "bimodule file for M");
      sub->add_option("--n", cfg.bimoduleN, "bimodule file for N");
      sub->add_option("--pair", cfg.pair, "builtin pair: identity or matrix2");
    }
  }

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  if (!window.empty()) {
    auto colon = window.find(':');
    if (colon == std::string::npos) {
      std::cerr << "error: --window expects a:b\n";
      return 1;
    }
    try {
      cfg.windowLo = std::stoi(window.substr(0, colon));
      cfg.windowHi = std::stoi(window.substr(colon + 1));
    } catch (const std::exception&) {
      std::cerr << "error: --window expects integers a:b\n";
      return 1;
    }
  }

  stmod::RunResult res = stmod::run(cfg);
  (res.exitCode == 0 ? std::cout : std::cerr) << res.report;
  return res.exitCode;
}
