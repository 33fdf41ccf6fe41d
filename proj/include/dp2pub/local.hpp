#ifndef DP2PUB_LOCAL_HPP
#define DP2PUB_LOCAL_HPP

#include <cstdint>
#include <vector>

#include "dp2pub/clustering.hpp"
#include "dp2pub/pram.hpp"

namespace dp2pub {

// Whole budget split evenly across the d dimensions of every record.
struct LocalBudget {
  double total_eps = 0.0;
  int dimensions = 0;

  double per_dim_eps() const { return total_eps / dimensions; }
  void validate() const {
    if (dimensions < 1 || !(total_eps > 0.0)) {
      throw DataError("local budget needs eps > 0 and at least one dimension");
    }
  }
};

// Client-side randomized response: each dimension independently keeps its
// value with probability e^eps' / (s - 1 + e^eps'), otherwise flips to a
// uniformly random other category.
std::vector<int> randomize_record(const std::vector<int>& record,
                                  const AttributeSchema& schema,
                                  const LocalBudget& budget, RngStream& rng);

struct AggregateResult {
  EncodedDataset noisy;
  std::vector<Eigen::VectorXd> lambda_hats;  // per-attribute empirical laws
};

// Assembles the noisy records in arrival order and tabulates the observed
// per-attribute distributions. All records must be valid under the schema.
AggregateResult aggregate(const AttributeSchema& schema,
                          const std::vector<std::vector<int>>& noisy_records);

struct LocalPublication {
  EncodedDataset published;
  BayesianNetwork network;
  Clustering clustering;  // diagnostics; budgets are not split further
  std::vector<AttributePerturbation> diagnostics;
  LocalBudget budget;
};

// Server side of the semi-honest protocol. Sees nothing but the noisy
// dataset: estimates each source law through the eps' channel, learns the
// greedy network and max-entropy clusters from the noisy data and the
// estimates, and applies each attribute's Bayes-inverse channel. Pure
// post-processing; no additional budget is consumed.
LocalPublication publish_local(const EncodedDataset& noisy,
                               const std::vector<Eigen::VectorXd>&
                                   lambda_hats,
                               double total_eps, int degree,
                               std::uint64_t master_seed);

}  // namespace dp2pub

#endif  // DP2PUB_LOCAL_HPP
