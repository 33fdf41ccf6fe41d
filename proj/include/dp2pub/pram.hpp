#ifndef DP2PUB_PRAM_HPP
#define DP2PUB_PRAM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dp2pub/channels.hpp"
#include "dp2pub/distribution.hpp"

namespace dp2pub {

// Per-attribute record of one double perturbation.
struct AttributePerturbation {
  int attribute = 0;
  double eps = 0.0;
  Eigen::VectorXd lambda_hat;  // empirical law of the once-perturbed column
  Eigen::VectorXd pi_hat;      // estimated source law
  bool clamped = false;
  TransitionMatrix q = TransitionMatrix::identity(1);
  TransitionMatrix q_tilde = TransitionMatrix::identity(1);
};

struct ClusterPerturbation {
  std::vector<int> members;                 // sorted attribute indices
  std::vector<Eigen::VectorXi> columns;     // twice-perturbed, members order
  std::vector<AttributePerturbation> diagnostics;
};

// Double perturbation of one cluster. Each member attribute gets
// eps = budget / |members|: the column is pushed through the randomized
// response channel Q, the source law is estimated from the perturbed
// column, and the column is pushed again through the Bayes-inverse
// channel built from that estimate. Only the once-perturbed data feeds
// the estimate; the raw column is read exactly once.
//
// Randomness comes from substreams mix_seed(master_seed, stage, attribute),
// so cluster order and scheduling do not affect the output.
ClusterPerturbation pram_cluster(const EncodedDataset& data,
                                 std::span<const int> members, double budget,
                                 std::uint64_t master_seed);

// Compound second-stage channel of a perturbed cluster, in members order.
// Diagnostic: per-attribute application already samples this joint law.
TransitionMatrix compound_channel(const ClusterPerturbation& result);

}  // namespace dp2pub

#endif  // DP2PUB_PRAM_HPP
