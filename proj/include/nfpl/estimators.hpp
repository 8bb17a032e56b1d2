#pragma once

#include "nfpl/core.hpp"
#include "nfpl/rng.hpp"

#include <string>
#include <variant>

namespace nfpl {

struct ExactCounts {};
// Draws `sample_size` of the B request events without replacement, scaled by B/b.
struct FixedSubsample {
  int sample_size = 1;
};
// Keeps each request event with probability `rate`, scaled by 1/f.
struct BernoulliSubsample {
  double rate = 1.0;
};

struct EstimatorSpec {
  std::variant<ExactCounts, FixedSubsample, BernoulliSubsample> kind;

  static EstimatorSpec exact() { return {ExactCounts{}}; }
  static EstimatorSpec fixed(int b) { return {FixedSubsample{b}}; }
  static EstimatorSpec bernoulli(double f) { return {BernoulliSubsample{f}}; }

  bool is_exact() const { return std::holds_alternative<ExactCounts>(kind); }
  void validate(int batch_size) const;
  std::string describe() const;
};

// r_hat = scale * sampled, where `sampled` are the raw per-file counts of the
// sub-batch (d_hat or s_hat). Keeping them integral lets callers compare
// estimate totals exactly.
struct NoisyEstimate {
  Counts sampled;
  double scale = 1.0;

  Scores values() const { return scale * sampled.cast<double>(); }
  double l1() const { return scale * static_cast<double>(sampled.sum()); }
};

struct BoundParams {
  double a_hat = 0.0;  // l1 bound of estimates
  double r_hat = 0.0;  // cost bound
  double diameter = 0.0;  // l1 diameter of the decision set
};

NoisyEstimate estimate(const EstimatorSpec& spec, const RequestBatch& batch, RandomStream& rng);

BoundParams bound_params(const EstimatorSpec& spec, const CatalogConfig& cfg);

}  // namespace nfpl
