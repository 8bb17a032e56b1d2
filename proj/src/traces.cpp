#include "nfpl/traces.hpp"

#include "nfpl/rng.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_map>

namespace nfpl {

void ZipfConfig::validate() const {
  if (files < 1) throw InvalidInput("zipf: N must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInput("zipf: alpha must be > 0");
  if (total_requests < 0) throw InvalidInput("zipf: request count must be >= 0");
}

void RoundRobinConfig::validate() const {
  if (files < 1) throw InvalidInput("round-robin: N must be >= 1");
  if (total_requests < 0) throw InvalidInput("round-robin: request count must be >= 0");
}

std::vector<double> zipf_probabilities(int files, double alpha) {
  std::vector<double> p(files);
  double norm = 0.0;
  for (int i = 0; i < files; ++i) {
    p[i] = std::pow(static_cast<double>(i + 1), -alpha);
    norm += p[i];
  }
  for (auto& v : p) v /= norm;
  return p;
}

Trace generate_zipf(const ZipfConfig& cfg) {
  cfg.validate();
  const auto p = zipf_probabilities(cfg.files, cfg.alpha);
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = acc += p[i];
  cdf.back() = 1.0;

  RandomStream rng(cfg.seed);
  Trace trace;
  trace.files = cfg.files;
  trace.events.reserve(static_cast<std::size_t>(cfg.total_requests));
  for (std::int64_t k = 0; k < cfg.total_requests; ++k) {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    trace.events.push_back(static_cast<FileId>(it - cdf.begin()) + 1);
  }
  return trace;
}

Trace generate_round_robin(const RoundRobinConfig& cfg) {
  cfg.validate();
  Trace trace;
  trace.files = cfg.files;
  trace.events.resize(static_cast<std::size_t>(cfg.total_requests));
  for (std::int64_t k = 0; k < cfg.total_requests; ++k)
    trace.events[k] = static_cast<FileId>(k % cfg.files) + 1;
  return trace;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

}  // namespace

Trace read_trace_file(const std::filesystem::path& path, bool remap,
                      std::optional<int> declared_files) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open trace file " + path.string());

  Trace trace;
  std::unordered_map<std::int64_t, FileId> dense;
  std::int64_t max_id = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto field = trim(line);
    if (field.empty() || field.front() == '#') continue;
    if (const auto comma = field.find(','); comma != std::string_view::npos)
      field = trim(field.substr(0, comma));

    std::int64_t id = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), id);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
      throw ParseError(lineno, "expected an integer file id, got '" + std::string(field) + "'");
    if (id < 0) throw ParseError(lineno, "negative file id");

    if (remap) {
      auto [it, inserted] = dense.try_emplace(id, static_cast<FileId>(dense.size() + 1));
      trace.events.push_back(it->second);
    } else {
      if (id == 0) throw ParseError(lineno, "file ids are 1-based");
      if (declared_files && id > *declared_files)
        throw ParseError(lineno, "file id " + std::to_string(id) + " exceeds declared N");
      if (id > std::numeric_limits<FileId>::max()) throw ParseError(lineno, "file id too large");
      max_id = std::max(max_id, id);
      trace.events.push_back(static_cast<FileId>(id));
    }
  }
  if (trace.events.empty()) throw InvalidInput("trace file " + path.string() + " has no requests");

  if (remap)
    trace.files = static_cast<int>(dense.size());
  else
    trace.files = declared_files ? *declared_files : static_cast<int>(max_id);
  return trace;
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::string buf;
  buf.reserve(1 << 16);
  for (const auto id : trace.events) {
    buf += std::to_string(id);
    buf += '\n';
    if (buf.size() > (1 << 16) - 16) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

std::vector<RequestBatch> batch_trace(const Trace& trace, int batch_size) {
  if (batch_size < 1) throw InvalidInput("batch_trace: B must be >= 1");
  if (trace.size() < static_cast<std::size_t>(batch_size))
    throw InvalidInput("batch_trace: trace shorter than one batch");
  const auto slots = static_cast<std::int64_t>(trace.size() / batch_size);
  std::vector<RequestBatch> batches;
  batches.reserve(slots);
  for (std::int64_t t = 0; t < slots; ++t) {
    RequestBatch batch{Counts::Zero(trace.files)};
    for (const auto id : slot_events(trace, batch_size, t)) {
      if (id < 1 || id > trace.files) throw InvalidInput("batch_trace: event id outside [1, N]");
      ++batch.counts[id - 1];
    }
    batches.push_back(std::move(batch));
  }
  return batches;
}

std::span<const FileId> slot_events(const Trace& trace, int batch_size, std::int64_t slot) {
  const auto begin = static_cast<std::size_t>(slot) * batch_size;
  if (begin + batch_size > trace.size()) throw InvalidInput("slot_events: slot beyond trace");
  return std::span<const FileId>(trace.events).subspan(begin, batch_size);
}

}  // namespace nfpl
