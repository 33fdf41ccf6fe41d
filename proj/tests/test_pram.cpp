#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dp2pub/distribution.hpp"
#include "dp2pub/pram.hpp"
#include "test_support.hpp"

using namespace dp2pub;
using testsupport::make_dataset;

namespace {

EncodedDataset uniform_binary_column(int n, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < n; ++i) {
    rows.push_back({rng.next_int(2)});
  }
  return make_dataset({2}, rows);
}

}  // namespace

TEST_CASE("singleton cluster with a huge budget is a near-identity") {
  const EncodedDataset data = uniform_binary_column(5000, 21);
  const ClusterPerturbation out =
      pram_cluster(data, std::vector{0}, 20.0, /*master_seed=*/7);
  REQUIRE(out.columns.size() == 1);
  // Per-cell change probability is below 1e-7; 5000 cells stay put.
  CHECK(out.columns[0] == data.column(0));
  CHECK(out.diagnostics[0].eps == doctest::Approx(20.0));
  CHECK_FALSE(out.diagnostics[0].clamped);
}

TEST_CASE("cluster budget splits evenly across members") {
  RngStream rng(5);
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 400; ++i) {
    rows.push_back({rng.next_int(2), rng.next_int(3)});
  }
  const EncodedDataset data = make_dataset({2, 3}, rows);
  const ClusterPerturbation out =
      pram_cluster(data, std::vector{1, 0}, 0.8, 99);
  REQUIRE(out.diagnostics.size() == 2);
  CHECK(out.members == std::vector<int>{0, 1});  // sorted
  CHECK(out.diagnostics[0].eps == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(out.diagnostics[1].eps == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(out.diagnostics[0].q.size() == 2);
  CHECK(out.diagnostics[1].q.size() == 3);
}

TEST_CASE("published marginal tracks the source at moderate budget") {
  const EncodedDataset data = uniform_binary_column(50000, 4242);
  const double source =
      empirical_distribution(data.column(0), 2)[0];
  const ClusterPerturbation out =
      pram_cluster(data, std::vector{0}, 1.0, 31);
  const double published = empirical_distribution(out.columns[0], 2)[0];
  CHECK(std::abs(published - source) < 0.02);
}

TEST_CASE("estimate feeds the second stage: no-clamp runs satisfy the "
          "fixed point") {
  const EncodedDataset data = uniform_binary_column(20000, 88);
  const ClusterPerturbation out =
      pram_cluster(data, std::vector{0}, 2.0, 54);
  const AttributePerturbation& diag = out.diagnostics[0];
  if (!diag.clamped) {
    const Eigen::VectorXd pushed =
        diag.q_tilde.entries().transpose() * diag.lambda_hat;
    CHECK((pushed - diag.pi_hat).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("pram_cluster is deterministic in the master seed") {
  RngStream rng(6);
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 500; ++i) {
    rows.push_back({rng.next_int(2), rng.next_int(2)});
  }
  const EncodedDataset data = make_dataset({2, 2}, rows);
  const ClusterPerturbation a = pram_cluster(data, std::vector{0, 1}, 1.0, 5);
  const ClusterPerturbation b = pram_cluster(data, std::vector{0, 1}, 1.0, 5);
  CHECK(a.columns[0] == b.columns[0]);
  CHECK(a.columns[1] == b.columns[1]);

  const ClusterPerturbation c = pram_cluster(data, std::vector{0, 1}, 1.0, 6);
  CHECK((a.columns[0] != c.columns[0] || a.columns[1] != c.columns[1]));
}

TEST_CASE("per-attribute substreams make cluster grouping irrelevant") {
  RngStream rng(12);
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 300; ++i) {
    rows.push_back({rng.next_int(2), rng.next_int(2)});
  }
  const EncodedDataset data = make_dataset({2, 2}, rows);
  // One two-member cluster vs two singletons at the same per-attribute eps.
  const ClusterPerturbation both =
      pram_cluster(data, std::vector{0, 1}, 1.0, 77);
  const ClusterPerturbation left =
      pram_cluster(data, std::vector{0}, 0.5, 77);
  const ClusterPerturbation right =
      pram_cluster(data, std::vector{1}, 0.5, 77);
  CHECK(both.columns[0] == left.columns[0]);
  CHECK(both.columns[1] == right.columns[0]);
}

TEST_CASE("independent application matches the compound channel law") {
  // Fixed channels; sample both attributes independently from one source
  // cell and compare against the corresponding compound row.
  const TransitionMatrix a = rr_matrix(2, 0.9);
  const TransitionMatrix b = rr_matrix(2, 0.4);
  const TransitionMatrix compound = kronecker(a, b);
  const int samples = 20000;
  RngStream rng_a(1001);
  RngStream rng_b(1002);
  for (int cell = 0; cell < 4; ++cell) {
    const Eigen::VectorXi col_a =
        Eigen::VectorXi::Constant(samples, cell / 2);
    const Eigen::VectorXi col_b =
        Eigen::VectorXi::Constant(samples, cell % 2);
    const Eigen::VectorXi out_a = apply_channel(col_a, a, rng_a);
    const Eigen::VectorXi out_b = apply_channel(col_b, b, rng_b);
    Eigen::VectorXd freq = Eigen::VectorXd::Zero(4);
    for (int i = 0; i < samples; ++i) {
      freq[out_a[i] * 2 + out_b[i]] += 1.0;
    }
    freq /= samples;
    const double tvd =
        0.5 *
        (freq - compound.entries().row(cell).transpose()).cwiseAbs().sum();
    CHECK(tvd < 0.02);
  }
}

TEST_CASE("compound_channel is the kronecker of the member inverses") {
  RngStream rng(3);
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 2000; ++i) {
    rows.push_back({rng.next_int(2), rng.next_int(3)});
  }
  const EncodedDataset data = make_dataset({2, 3}, rows);
  const ClusterPerturbation out =
      pram_cluster(data, std::vector{0, 1}, 2.0, 8);
  const TransitionMatrix compound = compound_channel(out);
  CHECK(compound.size() == 6);
  const TransitionMatrix manual =
      kronecker(out.diagnostics[0].q_tilde, out.diagnostics[1].q_tilde);
  CHECK((compound.entries() - manual.entries()).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("pram_cluster rejects bad inputs") {
  const EncodedDataset data = uniform_binary_column(10, 1);
  CHECK_THROWS_AS(pram_cluster(data, std::vector<int>{}, 1.0, 1), DataError);
  CHECK_THROWS_AS(pram_cluster(data, std::vector{0}, 0.0, 1), DataError);
}
