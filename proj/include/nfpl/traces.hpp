#pragma once

#include "nfpl/core.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfpl {

using FileId = std::int32_t;  // 1-based

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Trace {
  std::vector<FileId> events;
  int files = 0;  // N

  std::size_t size() const { return events.size(); }
};

struct ZipfConfig {
  int files = 1;
  double alpha = 1.0;
  std::int64_t total_requests = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RoundRobinConfig {
  int files = 1;
  std::int64_t total_requests = 0;

  void validate() const;
};

// Normalized p_i proportional to i^-alpha, i = 1..N.
std::vector<double> zipf_probabilities(int files, double alpha);

Trace generate_zipf(const ZipfConfig& cfg);
Trace generate_round_robin(const RoundRobinConfig& cfg);

// One id per line; '#' lines and blank lines skipped; anything after a comma
// ignored. With `remap`, ids become 1..N in order of first appearance.
// Without it ids must lie in [1, declared_files] (or [1, max id] if unset).
Trace read_trace_file(const std::filesystem::path& path, bool remap,
                      std::optional<int> declared_files = std::nullopt);
void write_trace_file(const std::filesystem::path& path, const Trace& trace);

// Consecutive B-event slots; the trailing partial slot is dropped.
std::vector<RequestBatch> batch_trace(const Trace& trace, int batch_size);

// Events of slot t (0-based) under batch size B.
std::span<const FileId> slot_events(const Trace& trace, int batch_size, std::int64_t slot);

}  // namespace nfpl
