#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dp2pub/evaluate.hpp"
#include "test_support.hpp"

using namespace dp2pub;
using testsupport::make_dataset;
using testsupport::random_simplex;

namespace {

DistributionVector simplex_dist(const Eigen::VectorXd& p) {
  return DistributionVector{{static_cast<int>(p.size())}, p};
}

}  // namespace

TEST_CASE("avd on simple distributions") {
  Eigen::VectorXd a(2), b(2), c(2);
  a << 0.5, 0.5;
  b << 0.75, 0.25;
  c << 1.0, 0.0;
  Eigen::VectorXd d(2);
  d << 0.0, 1.0;

  CHECK(avd(simplex_dist(a), simplex_dist(a)) == 0.0);
  CHECK(avd(simplex_dist(c), simplex_dist(d)) == doctest::Approx(1.0));
  CHECK(avd(simplex_dist(a), simplex_dist(b)) ==
        doctest::Approx(0.25).epsilon(1e-12));

  DistributionVector wider{{3}, Eigen::VectorXd::Constant(3, 1.0 / 3.0)};
  CHECK_THROWS_AS(avd(simplex_dist(a), wider), DataError);
}

TEST_CASE("avd behaves like a metric on the simplex") {
  RngStream rng(1611);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 2 + rng.next_int(5);
    const auto p = simplex_dist(random_simplex(rng, s));
    const auto q = simplex_dist(random_simplex(rng, s));
    const auto r = simplex_dist(random_simplex(rng, s));

    CHECK(avd(p, q) == doctest::Approx(avd(q, p)).epsilon(1e-15));
    CHECK(avd(p, p) < 1e-15);
    CHECK(avd(p, q) >= 0.0);
    CHECK(avd(p, q) <= 1.0 + 1e-15);
    CHECK(avd(p, r) <= avd(p, q) + avd(q, r) + 1e-12);
  }
}

TEST_CASE("alpha_way_avg of a dataset against itself is zero") {
  RngStream rng(8);
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 100; ++i) {
    rows.push_back({rng.next_int(2), rng.next_int(3), rng.next_int(2),
                    rng.next_int(2)});
  }
  const EncodedDataset data = make_dataset({2, 3, 2, 2}, rows);
  for (int alpha = 1; alpha <= 4; ++alpha) {
    CHECK(alpha_way_avg(data, data, alpha) == 0.0);
  }
}

TEST_CASE("alpha_way_avg enumerates every subset") {
  RngStream rng(9);
  std::vector<std::vector<int>> rows_a;
  std::vector<std::vector<int>> rows_b;
  for (int i = 0; i < 60; ++i) {
    rows_a.push_back({rng.next_int(2), rng.next_int(2), rng.next_int(2),
                      rng.next_int(2)});
    rows_b.push_back({rng.next_int(2), rng.next_int(2), rng.next_int(2),
                      rng.next_int(2)});
  }
  const EncodedDataset a = make_dataset({2, 2, 2, 2}, rows_a);
  const EncodedDataset b = make_dataset({2, 2, 2, 2}, rows_b);
  const AlphaWayStats stats = alpha_way_stats(a, b, 2);
  CHECK(stats.subsets_evaluated == 6);  // C(4, 2)
  CHECK_FALSE(stats.sampled);
  CHECK(stats.mean >= 0.0);
  CHECK(stats.mean <= 1.0);
}

TEST_CASE("two-attribute alpha_way_avg equals the single joint distance") {
  const EncodedDataset a =
      make_dataset({2, 2}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const EncodedDataset b =
      make_dataset({2, 2}, {{0, 0}, {0, 0}, {1, 1}, {1, 1}});
  // Joint of a: (1/4,1/4,1/4,1/4); joint of b: (1/2,0,0,1/2) -> avd 1/2.
  CHECK(alpha_way_avg(a, b, 2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("alpha_way_avg rejects mismatched inputs") {
  const EncodedDataset a = make_dataset({2, 2}, {{0, 0}, {1, 1}});
  const EncodedDataset b = make_dataset({2, 3}, {{0, 0}, {1, 2}});
  CHECK_THROWS_AS(alpha_way_avg(a, b, 2), DataError);
  CHECK_THROWS_AS(alpha_way_avg(a, a, 0), DataError);
  CHECK_THROWS_AS(alpha_way_avg(a, a, 3), DataError);
}

TEST_CASE("alpha_way_avg is invariant under consistent permutation") {
  RngStream rng(10);
  std::vector<std::vector<int>> rows_a;
  std::vector<std::vector<int>> rows_b;
  for (int i = 0; i < 80; ++i) {
    rows_a.push_back({rng.next_int(2), rng.next_int(3), rng.next_int(2)});
    rows_b.push_back({rng.next_int(2), rng.next_int(3), rng.next_int(2)});
  }
  const std::vector<int> perm{2, 0, 1};
  auto permute = [&](const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<int>> out;
    for (const auto& r : rows) {
      out.push_back({r[perm[0]], r[perm[1]], r[perm[2]]});
    }
    return out;
  };
  const EncodedDataset a = make_dataset({2, 3, 2}, rows_a);
  const EncodedDataset b = make_dataset({2, 3, 2}, rows_b);
  const EncodedDataset pa = make_dataset({2, 2, 3}, permute(rows_a));
  const EncodedDataset pb = make_dataset({2, 2, 3}, permute(rows_b));
  for (int alpha = 1; alpha <= 3; ++alpha) {
    CHECK(alpha_way_avg(a, b, alpha) ==
          doctest::Approx(alpha_way_avg(pa, pb, alpha)).epsilon(1e-12));
  }
}

TEST_CASE("subset sampling above the cap is seeded and deterministic") {
  RngStream rng(77);
  std::vector<std::vector<int>> rows_a;
  std::vector<std::vector<int>> rows_b;
  for (int i = 0; i < 50; ++i) {
    std::vector<int> ra(6), rb(6);
    for (int j = 0; j < 6; ++j) {
      ra[j] = rng.next_int(2);
      rb[j] = rng.next_int(2);
    }
    rows_a.push_back(ra);
    rows_b.push_back(rb);
  }
  const EncodedDataset a = make_dataset(std::vector<int>(6, 2), rows_a);
  const EncodedDataset b = make_dataset(std::vector<int>(6, 2), rows_b);

  AlphaWayOptions options;
  options.subset_cap = 5;  // C(6, 2) = 15 > 5
  options.sample_seed = 42;
  const AlphaWayStats first = alpha_way_stats(a, b, 2, options);
  CHECK(first.sampled);
  CHECK(first.subsets_evaluated == 5);
  const AlphaWayStats second = alpha_way_stats(a, b, 2, options);
  CHECK(first.mean == second.mean);

  options.sample_seed = 43;
  const AlphaWayStats reseeded = alpha_way_stats(a, b, 2, options);
  CHECK(reseeded.subsets_evaluated == 5);
}

TEST_CASE("run_sweep is deterministic and serializes") {
  const EncodedDataset data =
      testsupport::correlated_binary_dataset(800, 2, 0.15, 2001);
  PipelineConfig config;
  config.mode = Mode::kTrusted;
  config.runs = 2;
  config.alphas = {2};
  config.seed = 31415;

  const SweepReport one = run_sweep(data, config, {0.4, 1.2});
  const SweepReport two = run_sweep(data, config, {0.4, 1.2});
  CHECK(one.to_json().dump() == two.to_json().dump());
  REQUIRE(one.cells.size() == 2);
  for (const SweepCell& cell : one.cells) {
    CHECK(cell.mean >= 0.0);
    CHECK(cell.mean <= 1.0);
  }
  CHECK(one.to_csv().rfind("epsilon,alpha,mean,sd\n", 0) == 0);
}

TEST_CASE("run_sweep at a huge budget reports tiny distances") {
  const EncodedDataset data =
      testsupport::correlated_binary_dataset(20000, 3, 0.2, 555);
  PipelineConfig config;
  config.mode = Mode::kTrusted;
  config.runs = 1;
  config.alphas = {2};
  config.seed = 7;
  const SweepReport report = run_sweep(data, config, {200.0});
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].mean < 0.02);
}

TEST_CASE("run_sweep recovers the budget-vs-error trend") {
  const EncodedDataset data =
      testsupport::correlated_binary_dataset(4000, 2, 0.15, 99);
  PipelineConfig config;
  config.mode = Mode::kTrusted;
  config.runs = 2;
  config.alphas = {2};
  config.seed = 13;
  const SweepReport report = run_sweep(data, config, {0.2, 1.6});
  REQUIRE(report.cells.size() == 2);
  CHECK(report.cells[1].mean < report.cells[0].mean);
}
