#ifndef DP2PUB_BAYES_NET_HPP
#define DP2PUB_BAYES_NET_HPP

#include <span>
#include <vector>

#include <json.hpp>

#include "dp2pub/distribution.hpp"
#include "dp2pub/rng.hpp"

namespace dp2pub {

// Attribute-parent pair; parents kept sorted ascending.
struct ApPair {
  int attribute = 0;
  std::vector<int> parents;
};

// Ordered list of d attribute-parent pairs forming a DAG of degree <= k:
// the first pair has no parents and the parents of pair i are drawn from
// the attributes of pairs 0..i-1.
class BayesianNetwork {
 public:
  BayesianNetwork(std::vector<ApPair> pairs, int degree);

  const std::vector<ApPair>& pairs() const { return pairs_; }
  int degree() const { return degree_; }
  int attribute_count() const { return static_cast<int>(pairs_.size()); }
  const std::vector<int>& parents_of(int attribute) const;

  // JSON list of {"attribute": name, "parents": [names]} in construction
  // order.
  nlohmann::json to_json(const AttributeSchema& schema) const;
  static BayesianNetwork from_json(const nlohmann::json& doc,
                                   const AttributeSchema& schema, int degree);

 private:
  std::vector<ApPair> pairs_;
  std::vector<int> pair_of_attribute_;
  int degree_ = 0;
};

// All candidate pairs (A, P) with A in remaining and P a subset of chosen
// of size min(degree, |chosen|), in canonical order: ascending attribute,
// then lexicographic parent set. chosen and remaining must be disjoint.
std::vector<ApPair> enumerate_candidates(std::span<const int> chosen,
                                         std::span<const int> remaining,
                                         int degree);

// Draws index i with probability proportional to
// exp(eps_round * scores[i] / (2 * deltas[i])); computed in log space.
int exp_mechanism_select(std::span<const double> scores, double eps_round,
                         std::span<const double> deltas, RngStream& rng);

// Single-sensitivity convenience overload.
int exp_mechanism_select(std::span<const double> scores, double eps_round,
                         double delta, RngStream& rng);

// The trusted-mode network: a uniformly random first attribute, then d - 1
// exponential-mechanism rounds at eps1 / (d - 1) each, scored by mutual
// information with per-candidate sensitivity.
BayesianNetwork build_dp_network(const EncodedDataset& data, int degree,
                                 double eps1, RngStream& rng);

// Deterministic variant used against the semi-honest server: highest
// empirical entropy first, each round the largest mutual information.
// Ties resolve to the canonical candidate order.
BayesianNetwork build_greedy_network(const EncodedDataset& data, int degree);

// Joint distribution over all attributes assembled from the network's
// empirical conditionals; unseen parent configurations fall back to a
// uniform conditional. Diagnostic-only, subject to the cell cap.
DistributionVector network_joint(const BayesianNetwork& net,
                                 const EncodedDataset& data,
                                 std::int64_t cell_cap = kDefaultCellCap);

// KL(empirical joint || network approximation) via the identity
// sum_i H(A_i) - sum_i I(A_i, P_i) - H(all attributes).
double kl_network_divergence(const EncodedDataset& data,
                             const BayesianNetwork& net,
                             std::int64_t cell_cap = kDefaultCellCap);

}  // namespace dp2pub

#endif  // DP2PUB_BAYES_NET_HPP
