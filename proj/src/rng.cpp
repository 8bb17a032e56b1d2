#include "nfpl/rng.hpp"

namespace nfpl {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
  // rejection on the top of the range keeps every residue equally likely
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

std::uint64_t SeedPlan::stream_seed(std::uint64_t run, StreamId id) const {
  std::uint64_t h = mix64(base_);
  h = mix64(h ^ mix64(run + 0x632be59bd9b4e019ULL));
  h = mix64(h ^ mix64(static_cast<std::uint64_t>(id) + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

}  // namespace nfpl
