#include "nfpl/estimators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace nfpl;

namespace {

RequestBatch batch(std::initializer_list<int> v) {
  RequestBatch b{Counts(static_cast<Eigen::Index>(v.size()))};
  int i = 0;
  for (int x : v) b.counts[i++] = x;
  return b;
}

}  // namespace

TEST_CASE("exact estimator is the identity") {
  RandomStream rng(1);
  const auto r = batch({3, 1});
  const auto e = estimate(EstimatorSpec::exact(), r, rng);
  CHECK(e.values() == Eigen::Vector2d(3, 1));
  CHECK(e.l1() == 4);
}

TEST_CASE("full-size samples reproduce the exact counts bit for bit") {
  RandomStream rng(2);
  const auto r = batch({5, 0, 2, 9, 4});
  for (int k = 0; k < 50; ++k) {
    CHECK(estimate(EstimatorSpec::fixed(20), r, rng).values() == r.counts.cast<double>());
    CHECK(estimate(EstimatorSpec::bernoulli(1.0), r, rng).values() == r.counts.cast<double>());
  }
}

TEST_CASE("fixed subsample is unbiased") {
  RandomStream rng(31);
  const auto r = batch({3, 2, 1, 0});
  const int draws = 100000;
  Eigen::Vector4d sum = Eigen::Vector4d::Zero();
  for (int k = 0; k < draws; ++k) sum += estimate(EstimatorSpec::fixed(2), r, rng).values();
  const Eigen::Vector4d mean = sum / draws;
  for (int i = 0; i < 4; ++i) {
    const double se = oracle::fixed_subsample_se(r.counts[i], 6, 2, draws);
    INFO("file " << i << " mean " << mean[i]);
    CHECK(std::abs(mean[i] - r.counts[i]) <= 3 * se + 1e-12);
  }
}

TEST_CASE("bernoulli subsample is unbiased") {
  RandomStream rng(32);
  const auto r = batch({3, 2, 1, 0});
  const int draws = 100000;
  Eigen::Vector4d sum = Eigen::Vector4d::Zero();
  for (int k = 0; k < draws; ++k) sum += estimate(EstimatorSpec::bernoulli(0.5), r, rng).values();
  const Eigen::Vector4d mean = sum / draws;
  for (int i = 0; i < 4; ++i) {
    const double se = oracle::bernoulli_subsample_se(r.counts[i], 0.5, draws);
    CHECK(std::abs(mean[i] - r.counts[i]) <= 3 * se + 1e-12);
  }
}

TEST_CASE("estimator support and norm properties") {
  RandomStream rng(77);
  std::mt19937_64 gen(4);
  const int n = 30, total = 200;
  for (int trial = 0; trial < 300; ++trial) {
    RequestBatch r{Counts::Zero(n)};
    for (int k = 0; k < total; ++k) ++r.counts[gen() % (n / 2)];  // upper half never requested
    const int b = 1 + static_cast<int>(gen() % total);
    const double f = 0.01 + 0.99 * static_cast<double>(gen() % 1000) / 1000.0;

    const auto fx = estimate(EstimatorSpec::fixed(b), r, rng);
    CHECK(fx.sampled.sum() == b);
    CHECK(fx.l1() == doctest::Approx(total).epsilon(1e-12));

    const auto bx = estimate(EstimatorSpec::bernoulli(f), r, rng);
    CHECK(bx.l1() <= total / f * (1 + 1e-12));

    for (int i = 0; i < n; ++i) {
      CHECK(fx.sampled[i] <= r.counts[i]);
      CHECK(bx.sampled[i] <= r.counts[i]);
      if (r.counts[i] == 0) {
        CHECK(fx.values()[i] == 0.0);
        CHECK(bx.values()[i] == 0.0);
      }
    }
  }
}

TEST_CASE("bernoulli may return an empty sub-batch") {
  RandomStream rng(5);
  const auto r = batch({1, 0, 0});
  int empty = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto e = estimate(EstimatorSpec::bernoulli(0.01), r, rng);
    if (e.sampled.sum() == 0) {
      ++empty;
      CHECK(e.values().isZero());
    }
  }
  CHECK(empty > 900);
}

TEST_CASE("invalid estimator specs") {
  RandomStream rng(1);
  const auto r = batch({2, 2});
  CHECK_THROWS_AS(estimate(EstimatorSpec::fixed(0), r, rng), InvalidInput);
  CHECK_THROWS_AS(estimate(EstimatorSpec::fixed(5), r, rng), InvalidInput);
  CHECK_THROWS_AS(estimate(EstimatorSpec::bernoulli(0.0), r, rng), InvalidInput);
  CHECK_THROWS_AS(estimate(EstimatorSpec::bernoulli(1.5), r, rng), InvalidInput);
}

TEST_CASE("bound parameters") {
  const CatalogConfig cfg{10000, 100, 200, 500};
  const auto exact = bound_params(EstimatorSpec::exact(), cfg);
  CHECK(exact.a_hat == 200);
  CHECK(exact.r_hat == 200);
  CHECK(exact.diameter == 200);

  const auto var = bound_params(EstimatorSpec::bernoulli(0.5), cfg);
  CHECK(var.a_hat == 400);
  CHECK(var.r_hat == 400);

  const auto fix = bound_params(EstimatorSpec::fixed(20), cfg);
  CHECK(fix.a_hat == 200);
  CHECK(fix.r_hat == 200);

  // the diameter is limited by the smaller of C and N - C
  CHECK(bound_params(EstimatorSpec::exact(), {10, 8, 5, 1}).diameter == 4);
  CHECK(bound_params(EstimatorSpec::exact(), {10, 10, 5, 1}).diameter == 0);
}
