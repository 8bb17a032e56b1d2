#include "commands.hpp"
#include "nfpl/config.hpp"
#include "nfpl/engine.hpp"
#include "nfpl/report_io.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace nfpl;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("nfpl_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NFPL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmallZipf = R"(# small experiment
seed = 7
runs = 3
cache = 5
batch = 20
threads = 1

[trace]
kind = zipf
files = 50
requests = 2000
alpha = 0.9

[policy OPT]
kind = static-opt

[policy LRU]
kind = lru

[policy FTL]
kind = ftl

[policy FPL]
kind = fpl

[policy NFPL-Fix]
kind = nfpl
estimator = fixed
sample_size = 5

[policy NFPL-Var]
kind = nfpl
estimator = bernoulli
rate = 0.25   # inline comment
)";

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_experiment_config(kSmallZipf);
  CHECK(cfg.base_seed == 7);
  CHECK(cfg.runs == 3);
  CHECK(cfg.capacity == 5);
  CHECK(cfg.batch_size == 20);
  REQUIRE(cfg.policies.size() == 6);
  CHECK(cfg.policies[2].tiebreak == TieBreak::MostRecent);
  CHECK(std::get<BernoulliSubsample>(cfg.policies[5].estimator.kind).rate == 0.25);
  CHECK(std::get<FixedSubsample>(cfg.policies[4].estimator.kind).sample_size == 5);
  const auto& z = std::get<ZipfSource>(cfg.trace);
  CHECK(z.alpha == 0.9);
  CHECK(!z.seed);
}

TEST_CASE("config errors name the offending key") {
  auto key_of = [](const std::string& text) -> std::string {
    try {
      parse_experiment_config(text);
    } catch (const ConfigError& e) {
      return e.key_path();
    }
    return "<none>";
  };
  const std::string trace = "[trace]\nkind = round-robin\nfiles = 10\nrequests = 100\n";
  CHECK(key_of("cache = 2\n" + trace + "[policy X]\nkind = nfpl\nestimator = bernoulli\nrate = 1.5\n") ==
        "policy.X.rate");
  CHECK(key_of("cache = 2\nbatch = 4\n" + trace +
               "[policy X]\nkind = nfpl\nestimator = fixed\nsample_size = 9\n") ==
        "policy.X.sample_size");
  CHECK(key_of("cache = x\n" + trace + "[policy X]\nkind = lru\n") == "experiment.cache");
  CHECK(key_of("cache = 20\n" + trace + "[policy X]\nkind = lru\n") == "experiment.cache");
  CHECK(key_of("colour = red\n" + trace + "[policy X]\nkind = lru\n") == "experiment.colour");
  CHECK(key_of(trace + "[policy X]\nkind = arc\n") == "policy.X.kind");
  CHECK(key_of(trace + "[policy X]\nkind = fpl\neta = -1\n") == "policy.X.eta");
  CHECK(key_of(trace + "[policy X]\nkind = fpl\ntiebreak = most-recent\n") == "policy.X.tiebreak");
  CHECK(key_of("[trace]\nkind = zipf\nfiles = 10\n[policy X]\nkind = lru\n") == "trace.requests");
  CHECK(key_of("[policy X]\nkind = lru\n") == "trace");
  CHECK(key_of(trace) == "policy");
}

TEST_CASE("config echo reproduces the experiment") {
  auto cfg = parse_experiment_config(kSmallZipf);
  const auto rep = run_experiment(cfg);
  const auto echo = format_experiment_config(cfg, &rep);
  CHECK(echo.find("eta = ") != std::string::npos);
  CHECK(echo.find("seed = " + std::to_string(resolved_trace_seed(cfg))) != std::string::npos);

  const auto again = parse_experiment_config(echo);
  const auto rep2 = run_experiment(again);
  CHECK(series_csv(rep) == series_csv(rep2));
  CHECK(summary_csv(rep) == summary_csv(rep2));
  CHECK(format_experiment_config(again, &rep2) == echo);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3, 707.10678118654755, 1e-300, 0.0, 123456789.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(90000.0) == "90000");
}

TEST_CASE("run writes series, summary and the config echo") {
  const auto dir = scratch("run");
  spit(dir / "exp.ini", kSmallZipf);
  std::ostringstream out, err;
  REQUIRE(cli::cmd_run(dir / "exp.ini", dir / "out", out, err) == cli::kOk);

  const auto series = lines(slurp(dir / "out" / "series.csv"));
  CHECK(series.at(0) == "t,policy,mean,d1,d9");
  CHECK(series.size() == 1 + 6 * 100);
  CHECK(series.at(1).rfind("1,OPT,", 0) == 0);

  const auto summary = lines(slurp(dir / "out" / "summary.csv"));
  CHECK(summary.at(0) == "policy,final_mean,final_d1,final_d9,cum_cost,opt_cost,regret,bound");
  REQUIRE(summary.size() == 7);
  CHECK(summary[1].find("OPT,") == 0);
  CHECK(summary[1].find(",0,") != std::string::npos);   // zero regret
  CHECK(summary[1].back() == ',');                      // no bound for deterministic policies
  CHECK(summary[4].back() != ',');
  CHECK(fs::exists(dir / "out" / "config_echo"));

  // a second run is byte-identical
  REQUIRE(cli::cmd_run(dir / "exp.ini", dir / "out2", out, err) == cli::kOk);
  for (const char* f : {"series.csv", "summary.csv", "config_echo"})
    CHECK(slurp(dir / "out" / f) == slurp(dir / "out2" / f));
}

TEST_CASE("round-robin optimum through the run command") {
  const auto dir = scratch("rr");
  spit(dir / "rr.ini",
       "cache = 100\nbatch = 200\nruns = 1\n[trace]\nkind = round-robin\nfiles = 1000\n"
       "requests = 100000\n[policy OPT]\nkind = static-opt\n");
  std::ostringstream out, err;
  REQUIRE(cli::cmd_run(dir / "rr.ini", dir / "out", out, err) == cli::kOk);
  const auto summary = lines(slurp(dir / "out" / "summary.csv"));
  CHECK(summary.at(1) == "OPT,0.9,0.9,0.9,90000,90000,0,");
}

TEST_CASE("file traces load relative to the config") {
  const auto dir = scratch("file");
  spit(dir / "t.txt", "# ids\n40\n40,extra\n7\n\n40\n7\n9\n");
  spit(dir / "f.ini", "cache = 1\nbatch = 2\n[trace]\nkind = file\npath = t.txt\n"
                      "[policy OPT]\nkind = static-opt\n");
  std::ostringstream out, err;
  REQUIRE(cli::cmd_run(dir / "f.ini", dir / "out", out, err) == cli::kOk);
  // remapped: 40 -> 1, 7 -> 2, 9 -> 3; batches (1,1) (2,1) (2,3); OPT caches 1
  CHECK(lines(slurp(dir / "out" / "summary.csv")).at(1) == "OPT,0.5,0.5,0.5,3,3,0,");
}

TEST_CASE("command-line interface") {
  const auto dir = scratch("bin");
  const auto trace = dir / "rr.txt";
  CHECK(run_cli("generate round-robin --files 1000 --requests 100000 -o " + trace.string()) == 0);
  const auto text = slurp(trace);
  CHECK(std::count(text.begin(), text.end(), '\n') == 100000);
  CHECK(text.rfind("1\n2\n3\n", 0) == 0);

  CHECK(run_cli("generate zipf --requests 10 -o " + (dir / "z.txt").string()) == 2);
  CHECK(run_cli("generate zipf --files 0 --requests 10 -o " + (dir / "z.txt").string()) == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("") == 2);

  spit(dir / "exp.ini", kSmallZipf);
  CHECK(run_cli("run " + (dir / "exp.ini").string() + " -o " + (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "summary.csv"));
  CHECK(run_cli("run " + (dir / "missing.ini").string() + " -o " + (dir / "out").string()) == 2);
  spit(dir / "bad.ini", "cache = -1\n");
  CHECK(run_cli("run " + (dir / "bad.ini").string() + " -o " + (dir / "o").string()) == 2);

  const auto sweep = dir / "sweep.csv";
  CHECK(run_cli("sweep " + (dir / "exp.ini").string() + " --rates 0,0.5 -o " + sweep.string()) == 2);
  CHECK(run_cli("sweep " + (dir / "exp.ini").string() + " --rates 1.5 -o " + sweep.string()) == 2);
  CHECK(run_cli("sweep " + (dir / "exp.ini").string() +
                " --rates 0.1,1 --caches 3,5 --variants fix,var -o " + sweep.string()) == 0);
  const auto rows = lines(slurp(sweep));
  CHECK(rows.at(0) == "variant,rate,cache,final_mean,final_d1,final_d9");
  CHECK(rows.size() == 1 + 8);
  CHECK(rows.at(1).rfind("fix,0.1,3,", 0) == 0);
}
