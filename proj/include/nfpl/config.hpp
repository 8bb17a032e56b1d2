#pragma once

#include "nfpl/engine.hpp"

#include <filesystem>
#include <string>

namespace nfpl {

// Carries the dotted key path of the offending setting, e.g. "policy.FPL.eta".
class ConfigError : public InvalidInput {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : InvalidInput(key_path + ": " + message), key_path_(std::move(key_path)) {}
  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

// Flat key/value format:
//
//   # comment
//   seed = 42            top-level experiment keys: seed runs cache batch horizon threads
//   [trace]              kind files requests alpha seed path remap
//   [policy NFPL-Var]    kind estimator sample_size rate tiebreak eta
//
// Relative trace paths resolve against `base_dir`.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Fully resolved config: explicit trace seed and the eta each perturbed policy
// ran with. Parsing it back reproduces the experiment.
std::string format_experiment_config(const ExperimentConfig& cfg, const ExperimentReport* report);

// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace nfpl
