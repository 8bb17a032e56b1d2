#include "commands.hpp"

#include "nfpl/config.hpp"
#include "nfpl/engine.hpp"
#include "nfpl/report_io.hpp"
#include "nfpl/traces.hpp"

#include <ostream>
#include <system_error>

namespace nfpl::cli {

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  if (!args.files || !args.requests) {
    err << "generate: --files and --requests are required\n";
    return kUsageError;
  }
  Trace trace;
  try {
    if (args.kind == "zipf")
      trace = generate_zipf({*args.files, args.alpha, *args.requests, args.seed});
    else if (args.kind == "round-robin")
      trace = generate_round_robin({*args.files, *args.requests});
    else {
      err << "generate: unknown trace kind '" << args.kind << "' (zipf or round-robin)\n";
      return kUsageError;
    }
  } catch (const InvalidInput& e) {
    err << "generate: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    auto tmp = args.output;
    tmp += ".tmp";
    write_trace_file(tmp, trace);
    std::filesystem::rename(tmp, args.output);
  } catch (const std::exception& e) {
    err << "generate: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  out << "N=" << trace.files << " events=" << trace.size() << "\n";
  return kOk;
}

int cmd_run(const std::filesystem::path& config, const std::filesystem::path& outdir,
            std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = load_experiment_config(config);
  } catch (const InvalidInput& e) {
    err << "config error: " << e.what() << "\n";
    return kUsageError;
  }

  ExperimentReport report;
  try {
    report = run_experiment(cfg);
  } catch (const InvalidInput& e) {
    err << "invalid experiment: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << "\n";
    return kRuntimeFailure;
  }

  const std::vector<std::pair<std::string, std::string>> files{
      {"series.csv", series_csv(report)},
      {"summary.csv", summary_csv(report)},
      {"config_echo", format_experiment_config(cfg, &report)},
  };
  std::vector<std::filesystem::path> written;
  try {
    std::filesystem::create_directories(outdir);
    for (const auto& [name, content] : files) {
      write_file_atomic(outdir / name, content);
      written.push_back(outdir / name);
    }
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& p : written) std::filesystem::remove(p, ec);
    err << "run failed: " << e.what() << "\n";
    return kRuntimeFailure;
  }

  out << "N=" << report.catalog.files << " C=" << report.catalog.capacity
      << " B=" << report.catalog.batch_size << " T=" << report.catalog.horizon
      << " opt_cost=" << report.opt_cost << "\n";
  for (const auto& p : report.policies)
    out << "  " << p.spec.name << ": final miss ratio " << format_double(p.band.mean.back()) << "\n";
  return kOk;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<SweepVariant> variants;
  SweepEta eta_rule{};
  try {
    for (const auto& v : args.variants) variants.push_back(sweep_variant_from_string(v));
    eta_rule = sweep_eta_from_string(args.eta_rule);
  } catch (const InvalidInput& e) {
    err << "sweep: " << e.what() << "\n";
    return kUsageError;
  }
  if (args.rates.empty()) {
    err << "sweep: --rates is required\n";
    return kUsageError;
  }
  for (const double r : args.rates) {
    if (!(r > 0.0 && r <= 1.0)) {
      err << "sweep: rate " << r << " outside (0, 1]\n";
      return kUsageError;
    }
  }

  ExperimentConfig cfg;
  try {
    cfg = load_experiment_config(args.config);
  } catch (const InvalidInput& e) {
    err << "config error: " << e.what() << "\n";
    return kUsageError;
  }

  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(cfg, variants, args.rates, args.caches, eta_rule);
  } catch (const InvalidInput& e) {
    err << "invalid sweep: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "sweep failed: " << e.what() << "\n";
    return kRuntimeFailure;
  }

  try {
    if (args.output.has_parent_path()) std::filesystem::create_directories(args.output.parent_path());
    write_file_atomic(args.output, sweep_csv(rows));
  } catch (const std::exception& e) {
    err << "sweep failed: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  out << rows.size() << " rows written to " << args.output.string() << "\n";
  return kOk;
}

}  // namespace nfpl::cli
