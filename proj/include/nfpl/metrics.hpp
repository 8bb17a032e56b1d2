#pragma once

#include "nfpl/core.hpp"
#include "nfpl/estimators.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nfpl {

struct RunSeries {
  std::string policy;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> per_slot_cost;

  std::int64_t total_cost() const;
};

struct RegretReport {
  std::int64_t cumulative_cost = 0;
  std::int64_t opt_cost = 0;
  std::int64_t empirical_regret = 0;  // may be negative for a single realization
  double theoretical_bound = 0.0;
};

// Cumulative mean miss ratio: entry t = sum_{tau<=t} cost_tau / (B t).
std::vector<double> average_miss_ratio(const RunSeries& series, int batch_size);

std::int64_t opt_cost(std::span<const RequestBatch> batches, const CatalogConfig& cfg);

RegretReport empirical_regret(const RunSeries& series, std::int64_t opt, double bound = 0.0);

// 2 sqrt(R_hat A_hat D T).
double bound_value(const BoundParams& bounds, std::int64_t horizon);

struct MissRatioBand {
  std::vector<double> mean;
  std::vector<double> d1;
  std::vector<double> d9;
};

// Nearest-rank quantile: the ceil(q M)-th smallest value (1-based).
double nearest_rank(std::vector<double> values, double q);

MissRatioBand decile_band(std::span<const std::vector<double>> runs);

struct HindsightComparison {
  double estimated_opt = 0.0;  // <r_hat_{1:T}, M(r_hat_{1:T})>
  double estimated_at_true_opt = 0.0;  // <r_hat_{1:T}, M(r_{1:T})>
  bool holds() const { return estimated_opt <= estimated_at_true_opt; }
};

// The optimum of the estimated totals never exceeds the estimated cost of the
// true optimum. Integral totals give an exact comparison.
template <typename EstDerived, typename TrueDerived>
HindsightComparison hindsight_comparison(const Eigen::MatrixBase<EstDerived>& estimated_totals,
                                         const Eigen::MatrixBase<TrueDerived>& true_totals,
                                         const CatalogConfig& cfg) {
  const auto est_opt = oracle_minimize(estimated_totals, cfg);
  const auto true_opt = oracle_minimize(true_totals, cfg);
  using Scalar = typename EstDerived::Scalar;
  const Scalar lhs = estimated_totals.dot(est_opt.missing.template cast<Scalar>());
  const Scalar rhs = estimated_totals.dot(true_opt.missing.template cast<Scalar>());
  return {static_cast<double>(lhs), static_cast<double>(rhs)};
}

}  // namespace nfpl
