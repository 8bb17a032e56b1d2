#include "nfpl/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace nfpl {

void ExperimentConfig::validate() const {
  if (runs < 1) throw InvalidInput("experiment: runs must be >= 1");
  if (policies.empty()) throw InvalidInput("experiment: no policies");
  if (batch_size < 1) throw InvalidInput("experiment: batch size must be >= 1");
  if (capacity < 1) throw InvalidInput("experiment: cache size must be >= 1");
  if (max_batches && *max_batches < 1) throw InvalidInput("experiment: horizon must be >= 1");
  for (const auto& p : policies) {
    if (p.eta_override && !(*p.eta_override >= 0.0))
      throw InvalidInput("policy " + p.name + ": eta must be >= 0");
    p.estimator.validate(batch_size);
  }
}

std::uint64_t resolved_trace_seed(const ExperimentConfig& cfg) {
  if (const auto* z = std::get_if<ZipfSource>(&cfg.trace); z && z->seed) return *z->seed;
  return SeedPlan(cfg.base_seed).stream_seed(0, StreamId::Trace);
}

Trace build_trace(const ExperimentConfig& cfg) {
  if (const auto* z = std::get_if<ZipfSource>(&cfg.trace))
    return generate_zipf({z->files, z->alpha, z->requests, resolved_trace_seed(cfg)});
  if (const auto* rr = std::get_if<RoundRobinSource>(&cfg.trace))
    return generate_round_robin({rr->files, rr->requests});
  const auto& f = std::get<FileSource>(cfg.trace);
  return read_trace_file(f.path, f.remap, f.files);
}

Workload make_workload(Trace trace, int capacity, int batch_size,
                       std::optional<std::int64_t> max_batches) {
  auto batches = batch_trace(trace, batch_size);
  if (max_batches && static_cast<std::int64_t>(batches.size()) > *max_batches)
    batches.resize(static_cast<std::size_t>(*max_batches));
  CatalogConfig catalog{trace.files, capacity, batch_size,
                        static_cast<std::int64_t>(batches.size())};
  catalog.validate();
  return {std::move(trace), std::move(batches), catalog};
}

std::optional<double> resolve_eta(const PolicySpec& spec, const CatalogConfig& catalog) {
  if (!spec.stochastic()) return std::nullopt;
  if (spec.eta_override) return *spec.eta_override;
  const auto estimator = spec.kind == PolicyKind::Fpl ? EstimatorSpec::exact() : spec.estimator;
  return compute_eta(bound_params(estimator, catalog), catalog.horizon);
}

RunResult run_policy(const PolicySpec& spec, const Workload& work, const SeedPlan& seeds,
                     std::uint64_t run, const DecisionObserver& observer) {
  const auto& cat = work.catalog;
  const auto T = static_cast<std::int64_t>(work.batches.size());
  RunResult result;
  result.series.policy = spec.name;
  result.series.per_slot_cost.reserve(T);

  auto pay = [&](std::int64_t t, const DecisionVector& x) {
    if (observer) observer(t, x);
    result.series.per_slot_cost.push_back(cost(work.batches[t], x));
  };

  switch (spec.kind) {
    case PolicyKind::Fpl:
    case PolicyKind::Nfpl: {
      result.series.seed = seeds.stream_seed(run, StreamId::Noise);
      auto noise = seeds.stream(run, StreamId::Noise);
      auto sampling = seeds.stream(run, StreamId::Sampling);
      const auto estimator = spec.kind == PolicyKind::Fpl ? EstimatorSpec::exact() : spec.estimator;
      PerturbedLeader leader(cat, estimator, *resolve_eta(spec, cat), spec.tiebreak);
      for (std::int64_t t = 0; t < T; ++t) {
        pay(t, leader.decide(noise));
        leader.observe(work.batches[t], sampling);
      }
      result.hindsight = hindsight_comparison(leader.sampled_totals(),
                                              total_counts(work.batches, cat.files), cat);
      break;
    }
    case PolicyKind::Ftl: {
      FollowTheLeader ftl(cat, spec.tiebreak);
      for (std::int64_t t = 0; t < T; ++t) {
        pay(t, ftl.decide());
        ftl.observe(work.batches[t], slot_events(work.trace, cat.batch_size, t),
                    t * cat.batch_size);
      }
      break;
    }
    case PolicyKind::StaticOpt: {
      const auto x = static_opt_decision(work.batches, cat, spec.tiebreak);
      for (std::int64_t t = 0; t < T; ++t) pay(t, x);
      break;
    }
    case PolicyKind::Lru: {
      LruCache lru(cat);
      for (std::int64_t t = 0; t < T; ++t) {
        if (observer) observer(t, lru.decision());
        result.series.per_slot_cost.push_back(
            lru.process_batch(slot_events(work.trace, cat.batch_size, t)));
      }
      break;
    }
  }
  return result;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NFPL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs fn(i) for i in [0, count) on a small pool; results must be written by
// index so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  const auto workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (auto i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, make_workload(build_trace(cfg), cfg.capacity, cfg.batch_size,
                                           cfg.max_batches));
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const Workload& work) {
  cfg.validate();
  const SeedPlan seeds(cfg.base_seed);
  ExperimentReport report;
  report.catalog = work.catalog;
  report.opt_cost = opt_cost(work.batches, work.catalog);

  struct Task {
    std::size_t policy;
    std::size_t run;
  };
  std::vector<Task> tasks;
  report.policies.resize(cfg.policies.size());
  for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
    auto& pr = report.policies[p];
    pr.spec = cfg.policies[p];
    pr.eta = resolve_eta(pr.spec, work.catalog);
    const auto runs = pr.spec.stochastic() ? static_cast<std::size_t>(cfg.runs) : std::size_t{1};
    pr.runs.resize(runs);
    for (std::size_t m = 0; m < runs; ++m) tasks.push_back({p, m});
  }

  parallel_for(tasks.size(), worker_count(cfg.threads), [&](std::size_t i) {
    const auto [p, m] = tasks[i];
    report.policies[p].runs[m] = run_policy(report.policies[p].spec, work, seeds, m);
  });

  for (auto& pr : report.policies) {
    std::vector<std::vector<double>> ratios;
    double cost_sum = 0.0;
    for (const auto& r : pr.runs) {
      ratios.push_back(average_miss_ratio(r.series, work.catalog.batch_size));
      cost_sum += static_cast<double>(r.series.total_cost());
      if (r.hindsight && !r.hindsight->holds()) pr.hindsight_holds = false;
    }
    pr.band = decile_band(ratios);
    pr.regret.cumulative_cost = cost_sum / static_cast<double>(pr.runs.size());
    pr.regret.opt_cost = report.opt_cost;
    pr.regret.regret = pr.regret.cumulative_cost - static_cast<double>(report.opt_cost);
    if (pr.spec.stochastic()) {
      const auto estimator =
          pr.spec.kind == PolicyKind::Fpl ? EstimatorSpec::exact() : pr.spec.estimator;
      pr.regret.bound = bound_value(bound_params(estimator, work.catalog), work.catalog.horizon);
    }
  }
  return report;
}

const char* to_string(SweepVariant v) { return v == SweepVariant::Fix ? "fix" : "var"; }

SweepVariant sweep_variant_from_string(const std::string& name) {
  if (name == "fix") return SweepVariant::Fix;
  if (name == "var") return SweepVariant::Var;
  throw InvalidInput("unknown sweep variant '" + name + "' (expected fix or var)");
}

const char* to_string(SweepEta rule) {
  return rule == SweepEta::Shared ? "shared" : "per-estimator";
}

SweepEta sweep_eta_from_string(const std::string& name) {
  if (name == "shared") return SweepEta::Shared;
  if (name == "per-estimator") return SweepEta::PerEstimator;
  throw InvalidInput("unknown eta rule '" + name + "' (expected shared or per-estimator)");
}

int fixed_sample_size(double rate, int batch_size) {
  const auto b = static_cast<int>(std::lround(rate * batch_size));
  return std::clamp(b, 1, batch_size);
}

PolicySpec sweep_policy(SweepVariant variant, double rate, int batch_size) {
  if (!(rate > 0.0 && rate <= 1.0)) throw InvalidInput("sweep rate must be in (0, 1]");
  const std::string name = std::string("NFPL-") + (variant == SweepVariant::Fix ? "Fix" : "Var");
  return variant == SweepVariant::Fix
             ? PolicySpec::nfpl(EstimatorSpec::fixed(fixed_sample_size(rate, batch_size)), name)
             : PolicySpec::nfpl(EstimatorSpec::bernoulli(rate), name);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, const std::vector<SweepVariant>& variants,
                                const std::vector<double>& rates, std::vector<int> capacities,
                                SweepEta eta_rule) {
  if (variants.empty() || rates.empty()) throw InvalidInput("sweep: need variants and rates");
  for (const double r : rates)
    if (!(r > 0.0 && r <= 1.0)) throw InvalidInput("sweep rate must be in (0, 1]");
  if (capacities.empty()) capacities.push_back(base.capacity);

  const Trace trace = build_trace(base);
  std::vector<SweepRow> rows;
  for (const int c : capacities) {
    ExperimentConfig cfg = base;
    cfg.capacity = c;
    cfg.policies.clear();
    const auto work = make_workload(trace, c, base.batch_size, base.max_batches);
    const double shared_eta = compute_eta(bound_params(EstimatorSpec::exact(), work.catalog),
                                          work.catalog.horizon);
    for (const auto v : variants) {
      for (const double r : rates) {
        auto spec = sweep_policy(v, r, base.batch_size);
        if (eta_rule == SweepEta::Shared) spec.eta_override = shared_eta;
        cfg.policies.push_back(std::move(spec));
      }
    }
    const auto report = run_experiment(cfg, work);

    std::size_t k = 0;
    for (const auto v : variants) {
      for (const double r : rates) {
        const auto& pr = report.policies[k++];
        rows.push_back({v, r, c, pr.band.mean.back(), pr.band.d1.back(), pr.band.d9.back(),
                        pr.hindsight_holds});
      }
    }
  }
  return rows;
}

}  // namespace nfpl
