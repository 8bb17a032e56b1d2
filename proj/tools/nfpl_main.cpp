#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace nfpl::cli;

  CLI::App app{"No-regret caching simulator with sampled request estimates"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic request trace");
  generate->add_option("kind", gen.kind, "zipf or round-robin")
      ->required()
      ->check(CLI::IsMember({"zipf", "round-robin"}));
  generate->add_option("--files", gen.files, "Catalog size N")->required();
  generate->add_option("--requests", gen.requests, "Number of requests")->required();
  generate->add_option("--alpha", gen.alpha, "Zipf exponent");
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("-o,--output", gen.output, "Trace file")->required();

  std::filesystem::path run_config, run_outdir;
  auto* run = app.add_subcommand("run", "Run an experiment and write CSV results");
  run->add_option("config", run_config, "Experiment config file")->required();
  run->add_option("-o,--output", run_outdir, "Output directory")->required();

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "Final miss ratio against sampling rate");
  sw->add_option("config", sweep.config, "Experiment config file")->required();
  sw->add_option("--variants", sweep.variants, "fix and/or var")->delimiter(',');
  sw->add_option("--rates", sweep.rates, "Sampling rates in (0, 1]")->delimiter(',')->required();
  sw->add_option("--caches", sweep.caches, "Cache sizes (default: the config's)")->delimiter(',');
  sw->add_option("--eta-rule", sweep.eta_rule, "shared (exact-count eta for all rows) or per-estimator");
  sw->add_option("-o,--output", sweep.output, "Sweep CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (*generate) return cmd_generate(gen, std::cout, std::cerr);
  if (*run) return cmd_run(run_config, run_outdir, std::cout, std::cerr);
  return cmd_sweep(sweep, std::cout, std::cerr);
}
