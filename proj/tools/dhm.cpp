#include <CLI11.hpp>
#include <iostream>

#include "dhm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dirac-harmonic maps between 2-spheres: construction and verification"};
  app.require_subcommand(1);
  dhm::CliOptions o;

  const auto common = [&o](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config, "run configuration (JSON)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "report path (default: standard output)");
    sub->add_option("--grid-override", o.grid_override, "replace both grid dimensions")->check(CLI::Range(8, 4096));
    sub->add_option("--seed", o.seed, "seed for randomized checks");
  };

  auto* construct = app.add_subcommand("construct", "build a pair and its admissibility report");
  common(construct, true);
  construct->add_option("--components", o.components_csv, "write component samples as CSV");

  auto* verify = app.add_subcommand("verify", "check field equations, Bochner identity, twistor equation, energy");
  common(verify, true);
  verify->add_option("--perturb", o.perturb, "add AMP * zbar to slot 1+ before verifying");

  auto* census = app.add_subcommand("census", "zero census of every slot against the predicted totals");
  common(census, true);

  auto* kernel = app.add_subcommand("kernel", "near-kernel of the discretized Dirac operator along z^d");
  common(kernel, false);
  kernel->add_option("--degree", o.degree, "map degree d")->required()->check(CLI::NonNegativeNumber);
  kernel->add_option("--slot", o.slot, "slot label")->check(CLI::IsMember({"1+", "0+", "1-", "0-"}));

  auto* search = app.add_subcommand("search", "damped Gauss-Newton descent on the joint residual");
  common(search, true);
  search->add_option("--trace", o.trace_csv, "descent trace CSV (default: <out>.trace.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(dhm::kExitConfigError);
  }

  if (*construct) return dhm::cmd_construct(o, std::cerr);
  if (*verify) return dhm::cmd_verify(o, std::cerr);
  if (*census) return dhm::cmd_census(o, std::cerr);
  if (*kernel) return dhm::cmd_kernel(o, std::cerr);
  return dhm::cmd_search(o, std::cerr);
}
