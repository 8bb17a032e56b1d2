#include "nfpl/traces.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace nfpl;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("nfpl_trace_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("zipf probabilities") {
  const auto p = zipf_probabilities(2, 1.0);
  CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const auto q = zipf_probabilities(100, 0.8);
  double sum = 0;
  for (double v : q) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q[0] / q[9] == doctest::Approx(std::pow(10.0, 0.8)));
}

TEST_CASE("zipf with one file always requests file 1") {
  const auto t = generate_zipf({1, 1.3, 1000, 4});
  CHECK(t.files == 1);
  CHECK(std::all_of(t.events.begin(), t.events.end(), [](FileId id) { return id == 1; }));
}

TEST_CASE("zipf empirical frequency within three standard errors") {
  const std::int64_t n = 100000;
  const auto t = generate_zipf({2, 1.0, n, 77});
  const auto ones = std::count(t.events.begin(), t.events.end(), 1);
  const double p = 2.0 / 3.0;
  const double sigma = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(static_cast<double>(ones) / n - p) < 3 * sigma);
}

TEST_CASE("zipf is reproducible from its seed") {
  const auto a = generate_zipf({500, 1.0, 20000, 123});
  const auto b = generate_zipf({500, 1.0, 20000, 123});
  const auto c = generate_zipf({500, 1.0, 20000, 124});
  CHECK(a.events == b.events);
  CHECK(a.events != c.events);
  for (auto id : a.events) REQUIRE((id >= 1 && id <= 500));
}

TEST_CASE("zipf at full catalog scale") {
  const auto t = generate_zipf({10000, 1.0, 5000000, 7});
  CHECK(t.size() == 5000000);
  CHECK(t.files == 10000);
  std::vector<std::int64_t> counts(10001, 0);
  for (auto id : t.events) ++counts[id];
  CHECK(counts[1] > counts[2]);
  CHECK(counts[2] > counts[10]);
  // p_1 = 1 / H_10000 ~ 0.1020
  CHECK(static_cast<double>(counts[1]) / 5e6 == doctest::Approx(0.1020).epsilon(0.01));
}

TEST_CASE("zipf config validation") {
  CHECK_THROWS_AS((generate_zipf({0, 1.0, 10, 1})), InvalidInput);
  CHECK_THROWS_AS((generate_zipf({10, 0.0, 10, 1})), InvalidInput);
  CHECK_THROWS_AS((generate_zipf({10, -1.0, 10, 1})), InvalidInput);
}

TEST_CASE("round robin cycles through the catalog") {
  CHECK(generate_round_robin({3, 5}).events == std::vector<FileId>{1, 2, 3, 1, 2});
  const auto big = generate_round_robin({10000, 1000000});
  CHECK(big.size() == 1000000);
  CHECK(big.events[10000] == 1);
  CHECK(big.events.back() == 10000);
  CHECK(std::count(big.events.begin(), big.events.end(), 42) == 100);
}

TEST_CASE("read trace with dense remap by first appearance") {
  const auto p = write_temp("remap", "7\n7\n3\n");
  const auto t = read_trace_file(p, true);
  CHECK(t.events == std::vector<FileId>{1, 1, 2});
  CHECK(t.files == 2);
}

TEST_CASE("read trace passthrough") {
  const auto p = write_temp("plain", "1\n2\n1\n");
  const auto t = read_trace_file(p, false, 2);
  CHECK(t.events == std::vector<FileId>{1, 2, 1});
  CHECK(t.files == 2);
  CHECK(read_trace_file(p, false).files == 2);
}

TEST_CASE("read trace skips comments and timestamps") {
  const auto p = write_temp("comments", "# header\n\n 5 , 1699999999\n0,12\n5\n   \n# end\n");
  const auto t = read_trace_file(p, true);
  CHECK(t.events == std::vector<FileId>{1, 2, 1});
}

TEST_CASE("read trace errors") {
  SUBCASE("zero id without remap") {
    const auto p = write_temp("zero", "1\n0\n");
    try {
      read_trace_file(p, false);
      FAIL("expected parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("negative id") {
    const auto p = write_temp("neg", "1\n2\n-4\n");
    CHECK_THROWS_AS(read_trace_file(p, true), ParseError);
  }
  SUBCASE("garbage") {
    const auto p = write_temp("garbage", "1\nabc\n");
    try {
      read_trace_file(p, true);
      FAIL("expected parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(read_trace_file(write_temp("frac", "1.5\n"), true), ParseError);
  }
  SUBCASE("id above declared N") {
    CHECK_THROWS_AS(read_trace_file(write_temp("big", "1\n3\n"), false, 2), ParseError);
  }
  SUBCASE("empty") {
    CHECK_THROWS_AS(read_trace_file(write_temp("empty", "# nothing\n"), true), InvalidInput);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_trace_file("/nonexistent/trace.txt", true), InvalidInput);
  }
}

TEST_CASE("trace file round trip") {
  const auto t = generate_zipf({50, 1.0, 3000, 2});
  const auto p = std::filesystem::temp_directory_path() / "nfpl_trace_rt";
  write_trace_file(p, t);
  const auto back = read_trace_file(p, false, 50);
  CHECK(back.events == t.events);
}

TEST_CASE("batching counts each slot") {
  Trace t{{1, 2, 1, 3}, 3};
  const auto b = batch_trace(t, 2);
  REQUIRE(b.size() == 2);
  CHECK(b[0].counts == Eigen::Vector3i(1, 1, 0));
  CHECK(b[1].counts == Eigen::Vector3i(1, 0, 1));

  const auto rr = batch_trace(generate_round_robin({3, 6}), 3);
  REQUIRE(rr.size() == 2);
  CHECK(rr[0].counts == Eigen::Vector3i(1, 1, 1));
  CHECK(rr[1].counts == Eigen::Vector3i(1, 1, 1));
}

TEST_CASE("batching drops the partial tail and conserves totals") {
  const auto t = generate_zipf({300, 0.9, 100000 + 137, 8});
  const auto b = batch_trace(t, 200);
  REQUIRE(b.size() == 500);
  Eigen::VectorXi sum = Eigen::VectorXi::Zero(300);
  for (const auto& r : b) {
    CHECK(r.total() == 200);
    sum += r.counts;
  }
  Eigen::VectorXi direct = Eigen::VectorXi::Zero(300);
  for (std::size_t k = 0; k < 100000; ++k) ++direct[t.events[k] - 1];
  CHECK(sum == direct);
}

TEST_CASE("batching errors") {
  Trace t{{1, 2, 1}, 2};
  CHECK_THROWS_AS(batch_trace(t, 4), InvalidInput);
  CHECK_THROWS_AS(batch_trace(t, 0), InvalidInput);
  CHECK(slot_events(t, 1, 2)[0] == 1);
  CHECK_THROWS_AS(slot_events(t, 2, 1), InvalidInput);
}
