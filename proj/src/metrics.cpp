#include "nfpl/metrics.hpp"

#include "nfpl/policies.hpp"

#include <cmath>
#include <numeric>

namespace nfpl {

std::int64_t RunSeries::total_cost() const {
  return std::accumulate(per_slot_cost.begin(), per_slot_cost.end(), std::int64_t{0});
}

std::vector<double> average_miss_ratio(const RunSeries& series, int batch_size) {
  if (batch_size < 1) throw InvalidInput("average_miss_ratio: B must be >= 1");
  std::vector<double> ratio(series.per_slot_cost.size());
  std::int64_t running = 0;
  for (std::size_t t = 0; t < ratio.size(); ++t) {
    running += series.per_slot_cost[t];
    ratio[t] = static_cast<double>(running) /
               (static_cast<double>(batch_size) * static_cast<double>(t + 1));
  }
  return ratio;
}

std::int64_t opt_cost(std::span<const RequestBatch> batches, const CatalogConfig& cfg) {
  const Totals totals = total_counts(batches, cfg.files);
  const auto x = oracle_minimize(totals, cfg);
  return totals.dot(x.missing.cast<std::int64_t>());
}

RegretReport empirical_regret(const RunSeries& series, std::int64_t opt, double bound) {
  const auto total = series.total_cost();
  return {total, opt, total - opt, bound};
}

double bound_value(const BoundParams& bounds, std::int64_t horizon) {
  return 2.0 * std::sqrt(bounds.r_hat * bounds.a_hat * bounds.diameter *
                         static_cast<double>(horizon));
}

double nearest_rank(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidInput("nearest_rank: no values");
  // the epsilon keeps 0.1 * 30 = 3.0000000000000004 at rank 3
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size()) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[rank - 1];
}

MissRatioBand decile_band(std::span<const std::vector<double>> runs) {
  if (runs.empty()) throw InvalidInput("decile_band: need at least one run");
  const auto len = runs.front().size();
  for (const auto& r : runs)
    if (r.size() != len) throw InvalidInput("decile_band: runs have different lengths");

  MissRatioBand band{std::vector<double>(len), std::vector<double>(len), std::vector<double>(len)};
  std::vector<double> column(runs.size());
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t m = 0; m < runs.size(); ++m) column[m] = runs[m][t];
    // summing in sorted order makes the mean independent of run order
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (const double v : column) sum += v;
    band.mean[t] = sum / static_cast<double>(runs.size());
    band.d1[t] = nearest_rank(column, 0.1);
    band.d9[t] = nearest_rank(column, 0.9);
  }
  return band;
}

}  // namespace nfpl
