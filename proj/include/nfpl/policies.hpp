#pragma once

#include "nfpl/core.hpp"
#include "nfpl/estimators.hpp"
#include "nfpl/rng.hpp"
#include "nfpl/traces.hpp"

#include <cstdint>
#include <list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nfpl {

enum class PolicyKind { Lru, Ftl, Fpl, Nfpl, StaticOpt };

const char* to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& name);

struct PolicySpec {
  std::string name;
  PolicyKind kind = PolicyKind::Fpl;
  EstimatorSpec estimator = EstimatorSpec::exact();
  TieBreak tiebreak = TieBreak::LowestIndex;
  std::optional<double> eta_override;

  // Policies that draw no randomness run once per experiment.
  bool stochastic() const { return kind == PolicyKind::Fpl || kind == PolicyKind::Nfpl; }

  static PolicySpec lru(std::string name = "LRU");
  static PolicySpec ftl(TieBreak rule = TieBreak::MostRecent, std::string name = "FTL");
  static PolicySpec fpl(std::string name = "FPL");
  static PolicySpec nfpl(EstimatorSpec estimator, std::string name);
  static PolicySpec static_opt(std::string name = "OPT");
};

// sqrt(R_hat * A_hat * T / D).
double compute_eta(const BoundParams& bounds, std::int64_t horizon);

// Uniform-noise perturbed leader over (possibly estimated) cumulative counts.
// With an exact estimator this is FPL.
class PerturbedLeader {
 public:
  PerturbedLeader(const CatalogConfig& cfg, EstimatorSpec estimator, double eta,
                  TieBreak rule = TieBreak::LowestIndex);

  // Draws a fresh gamma_t ~ U[0, eta]^N and returns M(costs + gamma_t).
  const DecisionVector& decide(RandomStream& noise);
  // costs += r_hat_t.
  void observe(const RequestBatch& batch, RandomStream& sampling);

  const DecisionVector& decision() const { return decision_; }
  const CumulativeCounts& accumulator() const { return costs_; }
  // Unscaled sub-batch totals; accumulator() == scale * sampled_totals().
  const Totals& sampled_totals() const { return sampled_; }
  double eta() const { return eta_; }
  std::int64_t slot() const { return slot_; }

 private:
  CatalogConfig cfg_;
  EstimatorSpec estimator_;
  double eta_;
  TieBreak rule_;
  CumulativeCounts costs_;
  Totals sampled_;
  Scores noise_;
  DecisionVector decision_;
  std::int64_t slot_ = 0;
};

// Caches the top-C files by exact cumulative count; LFU when B = 1.
class FollowTheLeader {
 public:
  FollowTheLeader(const CatalogConfig& cfg, TieBreak rule = TieBreak::MostRecent);

  const DecisionVector& decide();
  // `first_event` is the global index of events[0]; it feeds the recency stamps.
  void observe(const RequestBatch& batch, std::span<const FileId> events,
               std::int64_t first_event);

  const CumulativeCounts& accumulator() const { return costs_; }
  const DecisionVector& decision() const { return decision_; }

 private:
  CatalogConfig cfg_;
  TieBreak rule_;
  CumulativeCounts costs_;
  RecencyStamps last_seen_;
  DecisionVector decision_;
};

// Per-request LRU, warm-started with files 1..C (file 1 least recent).
class LruCache {
 public:
  explicit LruCache(const CatalogConfig& cfg);

  // Returns the number of misses over the slot's events in arrival order.
  std::int64_t process_batch(std::span<const FileId> events);

  bool contains(FileId id) const;
  std::size_t size() const { return order_.size(); }
  DecisionVector decision() const;

 private:
  int files_;
  int capacity_;
  std::list<FileId> order_;  // front = most recent
  std::vector<std::list<FileId>::iterator> where_;
  std::vector<char> present_;
};

// M(r_{1:T}): the best static cache in hindsight.
DecisionVector static_opt_decision(std::span<const RequestBatch> batches, const CatalogConfig& cfg,
                                   TieBreak rule = TieBreak::LowestIndex);

Totals total_counts(std::span<const RequestBatch> batches, int files);

}  // namespace nfpl
