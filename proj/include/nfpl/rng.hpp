#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace nfpl {

// Independent streams per run: noise for the perturbation, sampling for the
// estimators, trace for synthetic generation (shared by all runs).
enum class StreamId : std::uint64_t { Noise = 0, Sampling = 1, Trace = 2 };

std::uint64_t mix64(std::uint64_t z);

class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  // 53-bit uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

class SeedPlan {
 public:
  explicit SeedPlan(std::uint64_t base_seed) : base_(base_seed) {}

  std::uint64_t base_seed() const { return base_; }
  std::uint64_t stream_seed(std::uint64_t run, StreamId id) const;
  RandomStream stream(std::uint64_t run, StreamId id) const {
    return RandomStream(stream_seed(run, id));
  }

 private:
  std::uint64_t base_;
};

}  // namespace nfpl
