#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kp5/harness/commands.hpp"

namespace {

void add_common(CLI::App* sub, kp5::harness::CommandOptions& opts, bool config_required) {
  auto* c = sub->add_option_function<std::string>("--config", [&opts](const std::string& p) { opts.config = p; },
                                                  "run configuration (JSON)");
  if (config_required) c->required();
  sub->add_option_function<std::uint64_t>("--seed", [&opts](std::uint64_t s) { opts.seed = s; },
                                          "override the run seed");
  sub->add_option_function<std::string>("--out", [&opts](const std::string& p) { opts.out = p; },
                                        "output directory");
  sub->add_flag("--quiet,-q", opts.quiet, "suppress progress output");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace kp5::harness;
  CLI::App app{"kp5: fifth-order KP pseudospectral lab"};
  app.require_subcommand(1);

  CommandOptions opts;
  auto* simulate = app.add_subcommand("simulate", "split-step evolution with diagnostics and snapshots");
  add_common(simulate, opts, true);
  auto* picard = app.add_subcommand("picard", "Duhamel/Picard iteration with iterate distances");
  add_common(picard, opts, true);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, opts, false);
  verify->add_option("suite", opts.suite, "resonance|kp2bound|strichartz|convolution|dyadic|unitarity")->required();
  verify->add_option("--samples", opts.samples, "sample count (0 = suite default)");
  auto* norms = app.add_subcommand("norms", "all norms of a KP5F dump");
  add_common(norms, opts, false);
  norms->add_option("input", opts.input, "KP5F file")->required();
  auto* rmap = app.add_subcommand("resonance-map", "export the resonance function on a (xi1, xi2) grid");
  add_common(rmap, opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*simulate) return cmd_simulate(opts, std::cout, std::cerr);
  if (*picard) return cmd_picard(opts, std::cout, std::cerr);
  if (*verify) return cmd_verify(opts, std::cout, std::cerr);
  if (*norms) return cmd_norms(opts, std::cout, std::cerr);
  return cmd_resonance_map(opts, std::cout, std::cerr);
}
