#include "nfpl/policies.hpp"

#include <cmath>

namespace nfpl {

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Lru: return "lru";
    case PolicyKind::Ftl: return "ftl";
    case PolicyKind::Fpl: return "fpl";
    case PolicyKind::Nfpl: return "nfpl";
    case PolicyKind::StaticOpt: return "static-opt";
  }
  return "?";
}

PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "lru") return PolicyKind::Lru;
  if (name == "ftl" || name == "lfu") return PolicyKind::Ftl;
  if (name == "fpl") return PolicyKind::Fpl;
  if (name == "nfpl") return PolicyKind::Nfpl;
  if (name == "static-opt" || name == "opt") return PolicyKind::StaticOpt;
  throw InvalidInput("unknown policy kind '" + name + "'");
}

PolicySpec PolicySpec::lru(std::string name) {
  return {std::move(name), PolicyKind::Lru, EstimatorSpec::exact(), TieBreak::LowestIndex, {}};
}
PolicySpec PolicySpec::ftl(TieBreak rule, std::string name) {
  return {std::move(name), PolicyKind::Ftl, EstimatorSpec::exact(), rule, {}};
}
PolicySpec PolicySpec::fpl(std::string name) {
  return {std::move(name), PolicyKind::Fpl, EstimatorSpec::exact(), TieBreak::LowestIndex, {}};
}
PolicySpec PolicySpec::nfpl(EstimatorSpec estimator, std::string name) {
  return {std::move(name), PolicyKind::Nfpl, std::move(estimator), TieBreak::LowestIndex, {}};
}
PolicySpec PolicySpec::static_opt(std::string name) {
  return {std::move(name), PolicyKind::StaticOpt, EstimatorSpec::exact(), TieBreak::LowestIndex, {}};
}

double compute_eta(const BoundParams& bounds, std::int64_t horizon) {
  if (horizon < 1) throw InvalidInput("compute_eta: T must be >= 1");
  if (!(bounds.diameter > 0.0)) throw InvalidInput("compute_eta: decision-set diameter is zero");
  return std::sqrt(bounds.r_hat * bounds.a_hat * static_cast<double>(horizon) / bounds.diameter);
}

PerturbedLeader::PerturbedLeader(const CatalogConfig& cfg, EstimatorSpec estimator, double eta,
                                 TieBreak rule)
    : cfg_(cfg),
      estimator_(std::move(estimator)),
      eta_(eta),
      rule_(rule),
      costs_(cfg.files),
      sampled_(Totals::Zero(cfg.files)),
      noise_(Scores::Zero(cfg.files)) {
  cfg_.validate();
  estimator_.validate(cfg_.batch_size);
  if (!(eta_ >= 0.0) || !std::isfinite(eta_)) throw InvalidInput("perturbed leader: eta must be >= 0");
  if (rule_ == TieBreak::MostRecent)
    throw InvalidInput("perturbed leader: only lowest-index tie-break is supported");
}

const DecisionVector& PerturbedLeader::decide(RandomStream& noise) {
  for (Eigen::Index i = 0; i < noise_.size(); ++i) noise_[i] = eta_ * noise.uniform01();
  decision_ = oracle_minimize(costs_.totals() + noise_, cfg_, rule_);
  return decision_;
}

void PerturbedLeader::observe(const RequestBatch& batch, RandomStream& sampling) {
  const NoisyEstimate est = estimate(estimator_, batch, sampling);
  costs_.add(est.values());
  sampled_ += est.sampled.cast<std::int64_t>();
  ++slot_;
}

FollowTheLeader::FollowTheLeader(const CatalogConfig& cfg, TieBreak rule)
    : cfg_(cfg),
      rule_(rule),
      costs_(cfg.files),
      last_seen_(RecencyStamps::Constant(cfg.files, -1)) {
  cfg_.validate();
}

const DecisionVector& FollowTheLeader::decide() {
  decision_ = oracle_minimize(costs_.totals(), cfg_, rule_, &last_seen_);
  return decision_;
}

void FollowTheLeader::observe(const RequestBatch& batch, std::span<const FileId> events,
                              std::int64_t first_event) {
  costs_.add(batch.counts);
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto id = events[k];
    if (id < 1 || id > cfg_.files) throw InvalidInput("ftl: event id outside [1, N]");
    last_seen_[id - 1] = first_event + static_cast<std::int64_t>(k);
  }
}

LruCache::LruCache(const CatalogConfig& cfg)
    : files_(cfg.files), capacity_(cfg.capacity), where_(cfg.files), present_(cfg.files, 0) {
  cfg.validate();
  for (FileId id = 1; id <= capacity_; ++id) {
    order_.push_front(id);
    where_[id - 1] = order_.begin();
    present_[id - 1] = 1;
  }
}

bool LruCache::contains(FileId id) const {
  return id >= 1 && id <= files_ && present_[id - 1] != 0;
}

std::int64_t LruCache::process_batch(std::span<const FileId> events) {
  std::int64_t misses = 0;
  for (const auto id : events) {
    if (id < 1 || id > files_) throw InvalidInput("lru: event id outside [1, N]");
    const auto idx = static_cast<std::size_t>(id - 1);
    if (present_[idx]) {
      order_.splice(order_.begin(), order_, where_[idx]);
      continue;
    }
    ++misses;
    order_.push_front(id);
    where_[idx] = order_.begin();
    present_[idx] = 1;
    if (order_.size() > static_cast<std::size_t>(capacity_)) {
      present_[order_.back() - 1] = 0;
      order_.pop_back();
    }
  }
  return misses;
}

DecisionVector LruCache::decision() const {
  DecisionVector x{Eigen::VectorXi::Ones(files_)};
  for (const auto id : order_) x.missing[id - 1] = 0;
  return x;
}

Totals total_counts(std::span<const RequestBatch> batches, int files) {
  Totals totals = Totals::Zero(files);
  for (const auto& b : batches) {
    if (b.files() != files) throw InvalidInput("total_counts: batch length mismatch");
    totals += b.counts.cast<std::int64_t>();
  }
  return totals;
}

DecisionVector static_opt_decision(std::span<const RequestBatch> batches, const CatalogConfig& cfg,
                                   TieBreak rule) {
  if (rule == TieBreak::MostRecent)
    throw InvalidInput("static opt: only lowest-index tie-break is supported");
  return oracle_minimize(total_counts(batches, cfg.files), cfg, rule);
}

}  // namespace nfpl
