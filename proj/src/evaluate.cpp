#include "dp2pub/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dp2pub {

namespace {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::int64_t factor = n - k + i;
    if (result > std::numeric_limits<std::int64_t>::max() / factor) {
      return std::numeric_limits<std::int64_t>::max();  // saturate
    }
    result = result * factor / i;
  }
  return result;
}

std::vector<int> combination_at(int n, int k, std::int64_t rank) {
  // rank-th size-k subset of {0..n-1} in lexicographic order.
  std::vector<int> combo;
  int next = 0;
  for (int slot = k; slot > 0; --slot) {
    for (int v = next; v <= n - slot; ++v) {
      const std::int64_t below = binomial(n - v - 1, slot - 1);
      if (rank < below) {
        combo.push_back(v);
        next = v + 1;
        break;
      }
      rank -= below;
    }
  }
  return combo;
}

}  // namespace

double avd(const DistributionVector& p, const DistributionVector& z) {
  if (p.domain_sizes != z.domain_sizes) {
    throw DataError("variation distance needs matching domains");
  }
  return 0.5 * (p.probabilities - z.probabilities).cwiseAbs().sum();
}

AlphaWayStats alpha_way_stats(const EncodedDataset& original,
                              const EncodedDataset& published, int alpha,
                              const AlphaWayOptions& options) {
  if (!(original.schema() == published.schema())) {
    throw DataError("datasets do not share a schema");
  }
  const int d = original.attribute_count();
  if (alpha < 1 || alpha > d) {
    throw DataError("alpha must lie in [1, attribute count]");
  }
  const std::int64_t total = binomial(d, alpha);

  AlphaWayStats stats;
  double sum = 0.0;
  if (total <= options.subset_cap) {
    std::vector<int> subset(alpha);
    for (int i = 0; i < alpha; ++i) subset[i] = i;
    while (true) {
      sum += avd(empirical_marginal(original, subset),
                 empirical_marginal(published, subset));
      ++stats.subsets_evaluated;
      int i = alpha - 1;
      while (i >= 0 && subset[i] == d - alpha + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < alpha; ++j) subset[j] = subset[j - 1] + 1;
    }
  } else {
    stats.sampled = true;
    RngStream rng(mix_seed(options.sample_seed, stage::kSubsetSample,
                           static_cast<std::uint64_t>(alpha)));
    for (std::int64_t i = 0; i < options.subset_cap; ++i) {
      const std::int64_t pick = static_cast<std::int64_t>(
          rng.next_double() * static_cast<double>(total));
      const std::vector<int> subset =
          combination_at(d, alpha, std::min(pick, total - 1));
      sum += avd(empirical_marginal(original, subset),
                 empirical_marginal(published, subset));
      ++stats.subsets_evaluated;
    }
  }
  stats.mean = sum / static_cast<double>(stats.subsets_evaluated);
  return stats;
}

double alpha_way_avg(const EncodedDataset& original,
                     const EncodedDataset& published, int alpha,
                     const AlphaWayOptions& options) {
  return alpha_way_stats(original, published, alpha, options).mean;
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json cells_json = nlohmann::json::array();
  for (const SweepCell& cell : cells) {
    cells_json.push_back({{"epsilon", cell.epsilon},
                          {"alpha", cell.alpha},
                          {"mean", cell.mean},
                          {"sd", cell.sd}});
  }
  return {{"mode", mode},       {"degree", degree},
          {"runs", runs},       {"seed", seed},
          {"epsilon", epsilons}, {"alpha", alphas},
          {"cells", std::move(cells_json)}};
}

std::string SweepReport::to_csv() const {
  std::ostringstream out;
  out << "epsilon,alpha,mean,sd\n";
  out.precision(17);
  for (const SweepCell& cell : cells) {
    out << cell.epsilon << ',' << cell.alpha << ',' << cell.mean << ','
        << cell.sd << '\n';
  }
  return out.str();
}

SweepReport run_sweep(const EncodedDataset& data, const PipelineConfig& base,
                      const std::vector<double>& epsilons) {
  base.validate();
  if (epsilons.empty()) {
    throw UsageError("sweep needs at least one epsilon");
  }
  std::vector<int> alphas =
      base.alphas.empty() ? default_alphas(data.schema()) : base.alphas;

  SweepReport report;
  report.mode = to_string(base.mode);
  report.degree = base.degree;
  report.runs = base.runs;
  report.seed = base.seed;
  report.epsilons = epsilons;
  report.alphas = alphas;

  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    // distances[a][r] = alpha_way_avg of run r at alphas[a].
    std::vector<std::vector<double>> distances(alphas.size());
    for (int r = 0; r < base.runs; ++r) {
      PipelineConfig run_config = base;
      run_config.epsilon = epsilons[e];
      run_config.seed = mix_seed(base.seed, stage::kSweep,
                                 static_cast<std::uint64_t>(e),
                                 static_cast<std::uint64_t>(r));
      const auto [published, run_report] = publish(data, run_config);
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        AlphaWayOptions options;
        options.sample_seed = run_config.seed;
        distances[a].push_back(
            alpha_way_avg(data, published, alphas[a], options));
      }
    }
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      const auto& values = distances[a];
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double variance = 0.0;
      for (double v : values) variance += (v - mean) * (v - mean);
      const double sd =
          values.size() > 1
              ? std::sqrt(variance / static_cast<double>(values.size() - 1))
              : 0.0;
      report.cells.push_back(SweepCell{epsilons[e], alphas[a], mean, sd});
    }
  }
  return report;
}

}  // namespace dp2pub
