#include "nfpl/estimators.hpp"

#include <cmath>
#include <sstream>

namespace nfpl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Selection sampling (Knuth, Algorithm S) over the B events laid out file by
// file, so the batch is never materialized as a list of ids.
Counts sample_fixed(const Counts& counts, int batch_total, int wanted, RandomStream& rng) {
  Counts picked = Counts::Zero(counts.size());
  std::int64_t remaining = batch_total;
  std::int64_t needed = wanted;
  for (int i = 0; i < counts.size() && needed > 0; ++i) {
    for (int k = 0; k < counts[i] && needed > 0; ++k) {
      if (static_cast<std::int64_t>(rng.below(remaining)) < needed) {
        ++picked[i];
        --needed;
      }
      --remaining;
    }
  }
  return picked;
}

Counts sample_bernoulli(const Counts& counts, double rate, RandomStream& rng) {
  Counts picked = Counts::Zero(counts.size());
  for (int i = 0; i < counts.size(); ++i)
    for (int k = 0; k < counts[i]; ++k)
      if (rng.uniform01() < rate) ++picked[i];
  return picked;
}

}  // namespace

void EstimatorSpec::validate(int batch_size) const {
  std::visit(overloaded{
                 [](const ExactCounts&) {},
                 [&](const FixedSubsample& s) {
                   if (s.sample_size < 1 || s.sample_size > batch_size)
                     throw InvalidInput("fixed subsample: b must be in [1, B]");
                 },
                 [](const BernoulliSubsample& s) {
                   if (!(s.rate > 0.0 && s.rate <= 1.0))
                     throw InvalidInput("bernoulli subsample: f must be in (0, 1]");
                 },
             },
             kind);
}

std::string EstimatorSpec::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ExactCounts&) { os << "exact"; },
                 [&](const FixedSubsample& s) { os << "fixed(b=" << s.sample_size << ")"; },
                 [&](const BernoulliSubsample& s) { os << "bernoulli(f=" << s.rate << ")"; },
             },
             kind);
  return os.str();
}

NoisyEstimate estimate(const EstimatorSpec& spec, const RequestBatch& batch, RandomStream& rng) {
  const int total = batch.total();
  spec.validate(total);
  if ((batch.counts.array() < 0).any()) throw InvalidInput("estimate: negative request count");

  return std::visit(
      overloaded{
          [&](const ExactCounts&) { return NoisyEstimate{batch.counts, 1.0}; },
          [&](const FixedSubsample& s) {
            return NoisyEstimate{sample_fixed(batch.counts, total, s.sample_size, rng),
                                 static_cast<double>(total) / s.sample_size};
          },
          [&](const BernoulliSubsample& s) {
            return NoisyEstimate{sample_bernoulli(batch.counts, s.rate, rng), 1.0 / s.rate};
          },
      },
      spec.kind);
}

BoundParams bound_params(const EstimatorSpec& spec, const CatalogConfig& cfg) {
  cfg.validate();
  spec.validate(cfg.batch_size);
  const double b = cfg.batch_size;
  const double a = std::visit(overloaded{
                                  [&](const ExactCounts&) { return b; },
                                  [&](const FixedSubsample&) { return b; },
                                  [&](const BernoulliSubsample& s) { return b / s.rate; },
                              },
                              spec.kind);
  return {a, a, 2.0 * std::min(cfg.capacity, cfg.files - cfg.capacity)};
}

}  // namespace nfpl
