#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nfpl::cli {

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsageError = 2 };

struct GenerateArgs {
  std::string kind;  // zipf | round-robin
  std::optional<int> files;
  std::optional<std::int64_t> requests;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::filesystem::path output;
};

struct SweepArgs {
  std::filesystem::path config;
  std::vector<std::string> variants{"fix", "var"};
  std::vector<double> rates;
  std::vector<int> caches;
  std::string eta_rule = "shared";
  std::filesystem::path output;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err);
// Writes series.csv, summary.csv and config_echo into `outdir`.
int cmd_run(const std::filesystem::path& config, const std::filesystem::path& outdir,
            std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);

}  // namespace nfpl::cli
