#include "nfpl/report_io.hpp"

#include "nfpl/config.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

namespace nfpl {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string series_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "t,policy,mean,d1,d9\n";
  for (const auto& p : report.policies) {
    for (std::size_t t = 0; t < p.band.mean.size(); ++t) {
      os << (t + 1) << ',' << p.spec.name << ',' << format_double(p.band.mean[t]) << ','
         << format_double(p.band.d1[t]) << ',' << format_double(p.band.d9[t]) << '\n';
    }
  }
  return os.str();
}

std::string summary_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "policy,final_mean,final_d1,final_d9,cum_cost,opt_cost,regret,bound\n";
  for (const auto& p : report.policies) {
    os << p.spec.name << ',' << format_double(p.band.mean.back()) << ','
       << format_double(p.band.d1.back()) << ',' << format_double(p.band.d9.back()) << ','
       << format_double(p.regret.cumulative_cost) << ',' << p.regret.opt_cost << ','
       << format_double(p.regret.regret) << ',';
    if (p.regret.bound) os << format_double(*p.regret.bound);
    os << '\n';
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "variant,rate,cache,final_mean,final_d1,final_d9\n";
  for (const auto& r : rows) {
    os << to_string(r.variant) << ',' << format_double(r.rate) << ',' << r.capacity << ','
       << format_double(r.final_mean) << ',' << format_double(r.final_d1) << ','
       << format_double(r.final_d9) << '\n';
  }
  return os.str();
}

}  // namespace nfpl
