#include "nfpl/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nfpl {

namespace {

std::string trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(ws) - b + 1));
}

struct Entry {
  std::string value;
  std::size_t line = 0;
  bool used = false;
};

struct Section {
  std::string path;  // "experiment", "trace", "policy.<name>"
  std::string policy_name;
  std::map<std::string, Entry> entries;

  const Entry* find(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  std::string key(const std::string& k) const { return path + "." + k; }

  template <typename T>
  std::optional<T> number(const std::string& k) {
    const Entry* e = find(k);
    if (!e) return std::nullopt;
    T v{};
    const auto& s = e->value;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw ConfigError(key(k), "expected a number, got '" + s + "' (line " +
                                    std::to_string(e->line) + ")");
    return v;
  }

  template <typename T>
  T required_number(const std::string& k) {
    auto v = number<T>(k);
    if (!v) throw ConfigError(key(k), "missing required key");
    return *v;
  }

  std::optional<std::string> text(const std::string& k) {
    const Entry* e = find(k);
    return e ? std::optional<std::string>(e->value) : std::nullopt;
  }

  std::optional<bool> flag(const std::string& k) {
    auto v = text(k);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "yes" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "0") return false;
    throw ConfigError(key(k), "expected true or false, got '" + *v + "'");
  }

  void reject_unused() const {
    for (const auto& [k, e] : entries)
      if (!e.used)
        throw ConfigError(key(k), "unknown key (line " + std::to_string(e.line) + ")");
  }
};

std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> sections(1);
  sections[0].path = "experiment";
  std::set<std::string> seen{"experiment"};
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where, "unterminated section header");
      const auto header = trim(std::string_view(line).substr(1, line.size() - 2));
      Section s;
      if (header == "experiment" || header == "trace") {
        s.path = header;
      } else if (header.rfind("policy", 0) == 0 && header.size() > 6 &&
                 (header[6] == ' ' || header[6] == '\t')) {
        s.policy_name = trim(std::string_view(header).substr(7));
        if (s.policy_name.find_first_of(",\"") != std::string::npos)
          throw ConfigError(where, "policy names may not contain commas or quotes");
        s.path = "policy." + s.policy_name;
      } else {
        throw ConfigError(where, "unknown section [" + header + "]");
      }
      if (!seen.insert(s.path).second) throw ConfigError(s.path, "section defined twice");
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where, "expected key = value");
    auto key = trim(std::string_view(line).substr(0, eq));
    auto value = trim(std::string_view(line).substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string::npos) value = trim(value.substr(0, hash));
    auto& sec = sections.back();
    if (!sec.entries.emplace(key, Entry{value, lineno, false}).second)
      throw ConfigError(sec.key(key), "key repeated (line " + std::to_string(lineno) + ")");
  }
  return sections;
}

template <typename Fn>
auto rethrow_as(const std::string& key_path, Fn fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(key_path, e.what());
  }
}

PolicySpec parse_policy(Section& s) {
  PolicySpec p;
  p.name = s.policy_name;
  if (p.name.empty()) throw ConfigError(s.path, "policy needs a name");
  const auto kind = s.text("kind");
  if (!kind) throw ConfigError(s.key("kind"), "missing required key");
  p.kind = rethrow_as(s.key("kind"), [&] { return policy_kind_from_string(*kind); });
  p.tiebreak = p.kind == PolicyKind::Ftl ? TieBreak::MostRecent : TieBreak::LowestIndex;
  if (auto tb = s.text("tiebreak"))
    p.tiebreak = rethrow_as(s.key("tiebreak"), [&] { return tiebreak_from_string(*tb); });
  if (p.tiebreak == TieBreak::MostRecent && p.kind != PolicyKind::Ftl)
    throw ConfigError(s.key("tiebreak"), "most-recent applies to ftl only");

  if (p.kind == PolicyKind::Nfpl) {
    const auto est = s.text("estimator").value_or("exact");
    if (est == "exact") {
      p.estimator = EstimatorSpec::exact();
    } else if (est == "fixed") {
      p.estimator = EstimatorSpec::fixed(s.required_number<int>("sample_size"));
      if (std::get<FixedSubsample>(p.estimator.kind).sample_size < 1)
        throw ConfigError(s.key("sample_size"), "must be >= 1");
    } else if (est == "bernoulli") {
      const double f = s.required_number<double>("rate");
      if (!(f > 0.0 && f <= 1.0)) throw ConfigError(s.key("rate"), "must be in (0, 1]");
      p.estimator = EstimatorSpec::bernoulli(f);
    } else {
      throw ConfigError(s.key("estimator"), "expected exact, fixed or bernoulli");
    }
  }
  if (p.stochastic()) {
    p.eta_override = s.number<double>("eta");
    if (p.eta_override && !(*p.eta_override >= 0.0))
      throw ConfigError(s.key("eta"), "must be >= 0");
  }
  s.reject_unused();
  return p;
}

TraceSource parse_trace(Section& s, const std::filesystem::path& base_dir) {
  const auto kind = s.text("kind");
  if (!kind) throw ConfigError(s.key("kind"), "missing required key");
  if (*kind == "zipf") {
    ZipfSource z;
    z.files = s.required_number<int>("files");
    z.requests = s.required_number<std::int64_t>("requests");
    z.alpha = s.number<double>("alpha").value_or(1.0);
    z.seed = s.number<std::uint64_t>("seed");
    if (z.files < 1) throw ConfigError(s.key("files"), "must be >= 1");
    if (!(z.alpha > 0.0)) throw ConfigError(s.key("alpha"), "must be > 0");
    if (z.requests < 1) throw ConfigError(s.key("requests"), "must be >= 1");
    s.reject_unused();
    return z;
  }
  if (*kind == "round-robin") {
    RoundRobinSource rr;
    rr.files = s.required_number<int>("files");
    rr.requests = s.required_number<std::int64_t>("requests");
    if (rr.files < 1) throw ConfigError(s.key("files"), "must be >= 1");
    if (rr.requests < 1) throw ConfigError(s.key("requests"), "must be >= 1");
    s.reject_unused();
    return rr;
  }
  if (*kind == "file") {
    FileSource f;
    const auto path = s.text("path");
    if (!path) throw ConfigError(s.key("path"), "missing required key");
    std::filesystem::path p(*path);
    f.path = (p.is_relative() && !base_dir.empty() ? base_dir / p : p).string();
    f.remap = s.flag("remap").value_or(true);
    f.files = s.number<int>("files");
    s.reject_unused();
    return f;
  }
  throw ConfigError(s.key("kind"), "expected zipf, round-robin or file");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::filesystem::path& base_dir) {
  auto sections = split_sections(text);
  ExperimentConfig cfg;
  bool have_trace = false;
  for (auto& s : sections) {
    if (s.path == "experiment") {
      if (s.entries.empty() && &s == &sections.front()) continue;
      cfg.base_seed = s.number<std::uint64_t>("seed").value_or(cfg.base_seed);
      if (auto v = s.number<int>("runs")) cfg.runs = *v;
      if (auto v = s.number<int>("cache")) cfg.capacity = *v;
      if (auto v = s.number<int>("batch")) cfg.batch_size = *v;
      if (auto v = s.number<std::int64_t>("horizon")) cfg.max_batches = *v;
      if (auto v = s.number<int>("threads")) cfg.threads = *v;
      s.reject_unused();
    } else if (s.path == "trace") {
      cfg.trace = parse_trace(s, base_dir);
      have_trace = true;
    } else {
      cfg.policies.push_back(parse_policy(s));
    }
  }
  if (!have_trace) throw ConfigError("trace", "missing [trace] section");
  if (cfg.policies.empty()) throw ConfigError("policy", "no [policy <name>] sections");
  if (cfg.runs < 1) throw ConfigError("experiment.runs", "must be >= 1");
  if (cfg.capacity < 1) throw ConfigError("experiment.cache", "must be >= 1");
  if (cfg.batch_size < 1) throw ConfigError("experiment.batch", "must be >= 1");
  if (cfg.max_batches && *cfg.max_batches < 1) throw ConfigError("experiment.horizon", "must be >= 1");
  if (cfg.threads < 0) throw ConfigError("experiment.threads", "must be >= 0");
  if (const auto* z = std::get_if<ZipfSource>(&cfg.trace); z && cfg.capacity > z->files)
    throw ConfigError("experiment.cache", "exceeds the catalog size");
  if (const auto* rr = std::get_if<RoundRobinSource>(&cfg.trace); rr && cfg.capacity > rr->files)
    throw ConfigError("experiment.cache", "exceeds the catalog size");
  for (const auto& p : cfg.policies) {
    const bool fixed = std::holds_alternative<FixedSubsample>(p.estimator.kind);
    rethrow_as("policy." + p.name + (fixed ? ".sample_size" : ""), [&] {
      p.estimator.validate(cfg.batch_size);
      return 0;
    });
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), path.parent_path());
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_experiment_config(const ExperimentConfig& cfg, const ExperimentReport* report) {
  std::ostringstream os;
  os << "# resolved experiment configuration\n";
  if (report)
    os << "# N = " << report->catalog.files << ", T = " << report->catalog.horizon
       << ", opt_cost = " << report->opt_cost << "\n";
  os << "seed = " << cfg.base_seed << "\n"
     << "runs = " << cfg.runs << "\n"
     << "cache = " << cfg.capacity << "\n"
     << "batch = " << cfg.batch_size << "\n";
  if (cfg.max_batches) os << "horizon = " << *cfg.max_batches << "\n";

  os << "\n[trace]\n";
  if (const auto* z = std::get_if<ZipfSource>(&cfg.trace)) {
    os << "kind = zipf\nfiles = " << z->files << "\nrequests = " << z->requests
       << "\nalpha = " << format_double(z->alpha) << "\nseed = " << resolved_trace_seed(cfg)
       << "\n";
  } else if (const auto* rr = std::get_if<RoundRobinSource>(&cfg.trace)) {
    os << "kind = round-robin\nfiles = " << rr->files << "\nrequests = " << rr->requests << "\n";
  } else {
    const auto& f = std::get<FileSource>(cfg.trace);
    os << "kind = file\npath = " << std::filesystem::absolute(f.path).string()
       << "\nremap = " << (f.remap ? "true" : "false") << "\n";
    if (f.files) os << "files = " << *f.files << "\n";
  }

  for (std::size_t i = 0; i < cfg.policies.size(); ++i) {
    const auto& p = cfg.policies[i];
    os << "\n[policy " << p.name << "]\nkind = " << to_string(p.kind) << "\n";
    if (p.kind == PolicyKind::Ftl) os << "tiebreak = " << to_string(p.tiebreak) << "\n";
    if (p.kind == PolicyKind::Nfpl) {
      std::visit(
          [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ExactCounts>)
              os << "estimator = exact\n";
            else if constexpr (std::is_same_v<K, FixedSubsample>)
              os << "estimator = fixed\nsample_size = " << k.sample_size << "\n";
            else
              os << "estimator = bernoulli\nrate = " << format_double(k.rate) << "\n";
          },
          p.estimator.kind);
    }
    std::optional<double> eta = p.eta_override;
    if (!eta && report && i < report->policies.size()) eta = report->policies[i].eta;
    if (p.stochastic() && eta) os << "eta = " << format_double(*eta) << "\n";
  }
  return os.str();
}

}  // namespace nfpl
