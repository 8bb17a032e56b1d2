#include "nfpl/core.hpp"

namespace nfpl {

void CatalogConfig::validate() const {
  if (files < 1) throw InvalidInput("catalog: N must be >= 1");
  if (capacity < 1 || capacity > files) throw InvalidInput("catalog: C must be in [1, N]");
  if (batch_size < 1) throw InvalidInput("catalog: B must be >= 1");
  if (horizon < 1) throw InvalidInput("catalog: T must be >= 1");
}

std::vector<int> DecisionVector::cached_files() const {
  std::vector<int> out;
  for (int i = 0; i < missing.size(); ++i)
    if (missing[i] == 0) out.push_back(i);
  return out;
}

bool DecisionVector::feasible(int capacity) const {
  for (int i = 0; i < missing.size(); ++i)
    if (missing[i] != 0 && missing[i] != 1) return false;
  return missing.sum() == files() - capacity;
}

const char* to_string(TieBreak rule) {
  return rule == TieBreak::MostRecent ? "most-recent" : "lowest-index";
}

TieBreak tiebreak_from_string(const std::string& name) {
  if (name == "lowest-index") return TieBreak::LowestIndex;
  if (name == "most-recent") return TieBreak::MostRecent;
  throw InvalidInput("unknown tie-break rule '" + name + "'");
}

std::int64_t cost(const RequestBatch& batch, const DecisionVector& x) {
  if (batch.counts.size() != x.missing.size()) throw InvalidInput("cost: length mismatch");
  return batch.counts.cast<std::int64_t>().dot(x.missing.cast<std::int64_t>());
}

}  // namespace nfpl
