#pragma once

#include "nfpl/core.hpp"
#include "nfpl/metrics.hpp"
#include "nfpl/policies.hpp"
#include "nfpl/rng.hpp"
#include "nfpl/traces.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nfpl {

struct ZipfSource {
  int files = 1;
  double alpha = 1.0;
  std::int64_t requests = 0;
  std::optional<std::uint64_t> seed;  // defaults to the experiment's trace stream
};

struct RoundRobinSource {
  int files = 1;
  std::int64_t requests = 0;
};

struct FileSource {
  std::string path;
  bool remap = true;
  std::optional<int> files;
};

using TraceSource = std::variant<ZipfSource, RoundRobinSource, FileSource>;

struct ExperimentConfig {
  TraceSource trace = RoundRobinSource{};
  int capacity = 1;
  int batch_size = 1;
  std::optional<std::int64_t> max_batches;  // run on a prefix of the batched trace
  std::vector<PolicySpec> policies;
  int runs = 1;  // M
  std::uint64_t base_seed = 0;
  int threads = 0;  // 0: NFPL_THREADS or hardware concurrency

  void validate() const;
};

// A trace batched under one (C, B) setting; T is the number of whole batches.
struct Workload {
  Trace trace;
  std::vector<RequestBatch> batches;
  CatalogConfig catalog;
};

std::uint64_t resolved_trace_seed(const ExperimentConfig& cfg);
Trace build_trace(const ExperimentConfig& cfg);
Workload make_workload(Trace trace, int capacity, int batch_size,
                       std::optional<std::int64_t> max_batches = std::nullopt);

// The perturbation scale a policy will use on this catalog, if it has one.
std::optional<double> resolve_eta(const PolicySpec& spec, const CatalogConfig& catalog);

struct RunResult {
  RunSeries series;
  std::optional<HindsightComparison> hindsight;  // perturbed-leader policies only
};

using DecisionObserver = std::function<void(std::int64_t slot, const DecisionVector&)>;

RunResult run_policy(const PolicySpec& spec, const Workload& work, const SeedPlan& seeds,
                     std::uint64_t run, const DecisionObserver& observer = {});

struct MeanRegret {
  double cumulative_cost = 0.0;
  std::int64_t opt_cost = 0;
  double regret = 0.0;
  std::optional<double> bound;
};

struct PolicyReport {
  PolicySpec spec;
  std::optional<double> eta;
  std::vector<RunResult> runs;  // one entry for deterministic policies
  MissRatioBand band;
  MeanRegret regret;
  bool hindsight_holds = true;
};

struct ExperimentReport {
  CatalogConfig catalog;
  std::int64_t opt_cost = 0;
  std::vector<PolicyReport> policies;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg, const Workload& work);

enum class SweepVariant { Fix, Var };

const char* to_string(SweepVariant v);
SweepVariant sweep_variant_from_string(const std::string& name);

// How the sweep sets eta. Shared: every variant uses the exact-count value
// sqrt(B * B * T / D), so rows differ only by their estimates. PerEstimator:
// each variant gets its own bound, which grows as 1/f for the Bernoulli sampler.
enum class SweepEta { Shared, PerEstimator };

const char* to_string(SweepEta rule);
SweepEta sweep_eta_from_string(const std::string& name);

// b = round(rate * B), clamped to [1, B].
int fixed_sample_size(double rate, int batch_size);
PolicySpec sweep_policy(SweepVariant variant, double rate, int batch_size);

struct SweepRow {
  SweepVariant variant = SweepVariant::Var;
  double rate = 1.0;
  int capacity = 1;
  double final_mean = 0.0;
  double final_d1 = 0.0;
  double final_d9 = 0.0;
  bool hindsight_holds = true;
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, const std::vector<SweepVariant>& variants,
                                const std::vector<double>& rates, std::vector<int> capacities,
                                SweepEta eta_rule = SweepEta::Shared);

int worker_count(int requested);

}  // namespace nfpl
