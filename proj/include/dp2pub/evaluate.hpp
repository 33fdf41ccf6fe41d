#ifndef DP2PUB_EVALUATE_HPP
#define DP2PUB_EVALUATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dp2pub/pipeline.hpp"

namespace dp2pub {

// Average (total) variation distance, 1/2 * sum |p_w - z_w|, in [0, 1].
double avd(const DistributionVector& p, const DistributionVector& z);

struct AlphaWayOptions {
  std::int64_t subset_cap = 20000;  // beyond this, subsets are sampled
  std::uint64_t sample_seed = 0;
};

struct AlphaWayStats {
  double mean = 0.0;
  std::int64_t subsets_evaluated = 0;
  bool sampled = false;
};

// Mean variation distance over the alpha-way marginals of the two datasets
// (all C(d, alpha) of them, or a seeded uniform sample past the cap).
AlphaWayStats alpha_way_stats(const EncodedDataset& original,
                              const EncodedDataset& published, int alpha,
                              const AlphaWayOptions& options = {});

double alpha_way_avg(const EncodedDataset& original,
                     const EncodedDataset& published, int alpha,
                     const AlphaWayOptions& options = {});

struct SweepCell {
  double epsilon = 0.0;
  int alpha = 0;
  double mean = 0.0;
  double sd = 0.0;
};

struct SweepReport {
  std::string mode;
  int degree = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  std::vector<double> epsilons;
  std::vector<int> alphas;
  std::vector<SweepCell> cells;  // ordered by (epsilon index, alpha index)

  nlohmann::json to_json() const;
  std::string to_csv() const;  // header: epsilon,alpha,mean,sd
};

// Runs `config.runs` independent publications per epsilon with seeds
// derived from (seed, epsilon index, run index) and reports the mean and
// standard deviation of the alpha-way average distances. Identical config
// and seed give an identical report.
SweepReport run_sweep(const EncodedDataset& data, const PipelineConfig& base,
                      const std::vector<double>& epsilons);

}  // namespace dp2pub

#endif  // DP2PUB_EVALUATE_HPP
