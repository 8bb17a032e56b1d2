#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace nfpl {

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Counts = Eigen::VectorXi;
using Totals = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using Scores = Eigen::VectorXd;

// Global event index of each file's latest request, -1 if never requested.
using RecencyStamps = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

struct CatalogConfig {
  int files = 1;       // N
  int capacity = 1;    // C
  int batch_size = 1;  // B
  std::int64_t horizon = 1;  // T

  void validate() const;
};

// x_i = 1 iff file i is NOT cached. Exactly N - C ones.
struct DecisionVector {
  Eigen::VectorXi missing;

  int files() const { return static_cast<int>(missing.size()); }
  bool cached(int index) const { return missing[index] == 0; }
  std::vector<int> cached_files() const;  // 0-based indices
  bool feasible(int capacity) const;

  friend bool operator==(const DecisionVector& a, const DecisionVector& b) {
    return a.missing.size() == b.missing.size() && a.missing == b.missing;
  }
};

// Per-file request counts of one slot.
struct RequestBatch {
  Counts counts;

  int files() const { return static_cast<int>(counts.size()); }
  int total() const { return counts.sum(); }
};

class CumulativeCounts {
 public:
  CumulativeCounts() = default;
  explicit CumulativeCounts(int files) : totals_(Scores::Zero(files)) {}

  template <typename Derived>
  CumulativeCounts& add(const Eigen::MatrixBase<Derived>& delta) {
    if (delta.size() != totals_.size())
      throw InvalidInput("accumulate: length mismatch");
    totals_ += delta.template cast<double>();
    return *this;
  }

  const Scores& totals() const { return totals_; }
  int files() const { return static_cast<int>(totals_.size()); }

 private:
  Scores totals_;
};

enum class TieBreak { LowestIndex, MostRecent };

const char* to_string(TieBreak rule);
TieBreak tiebreak_from_string(const std::string& name);

template <typename Derived>
CumulativeCounts accumulate(CumulativeCounts acc, const Eigen::MatrixBase<Derived>& delta) {
  acc.add(delta);
  return acc;
}

std::int64_t cost(const RequestBatch& batch, const DecisionVector& x);

namespace detail {

// Orders file indices so the first `capacity` are the cached ones: higher
// score first, then the tie-break rule, then lower index.
template <typename Scalar>
DecisionVector select_top(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& score, int capacity,
                          TieBreak rule, const RecencyStamps* recency) {
  const auto n = static_cast<int>(score.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  auto by_index = [&](int a, int b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return a < b;
  };
  auto by_recency = [&](int a, int b) {
    if (score[a] != score[b]) return score[a] > score[b];
    const auto ra = (*recency)[a], rb = (*recency)[b];
    if (ra != rb) return ra > rb;
    return a < b;
  };

  if (capacity < n) {
    auto nth = order.begin() + capacity;
    if (rule == TieBreak::MostRecent)
      std::nth_element(order.begin(), nth, order.end(), by_recency);
    else
      std::nth_element(order.begin(), nth, order.end(), by_index);
  }

  DecisionVector x{Eigen::VectorXi::Ones(n)};
  for (int k = 0; k < capacity; ++k) x.missing[order[k]] = 0;
  return x;
}

}  // namespace detail

// M(score): caches the `capacity` files with the largest score, which
// minimizes <score, x> over the feasible set.
template <typename Derived>
DecisionVector oracle_minimize(const Eigen::DenseBase<Derived>& score, const CatalogConfig& cfg,
                               TieBreak rule = TieBreak::LowestIndex,
                               const RecencyStamps* recency = nullptr) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> s = score;
  if (s.size() != cfg.files) throw InvalidInput("oracle_minimize: score length != N");
  if constexpr (!std::is_integral_v<Scalar>) {
    if (!s.allFinite()) throw InvalidInput("oracle_minimize: non-finite score");
  }
  if (cfg.capacity < 1 || cfg.capacity > cfg.files)
    throw InvalidInput("oracle_minimize: capacity outside [1, N]");
  if (rule == TieBreak::MostRecent) {
    if (recency == nullptr || recency->size() != cfg.files)
      throw InvalidInput("oracle_minimize: MostRecent tie-break needs recency stamps");
  }
  return detail::select_top<Scalar>(s, cfg.capacity, rule, recency);
}

}  // namespace nfpl
