#ifndef DP2PUB_CLUSTERING_HPP
#define DP2PUB_CLUSTERING_HPP

#include <span>
#include <vector>

#include "dp2pub/bayes_net.hpp"
#include "dp2pub/rng.hpp"

namespace dp2pub {

enum class HeadRule { kRandom, kMaxEntropy };

// How the per-cluster randomization budget follows cluster importance.
// kInverseCif matches the stated allocation (important clusters get less
// budget); kProportionalCif is the exposed override.
enum class BudgetWeighting { kInverseCif, kProportionalCif };

struct Cluster {
  int head = 0;
  std::vector<int> members;  // sorted; contains head
  double cif = 0.0;
  double pbc = 0.0;
  double budget = 0.0;
};

// Parents, children, and co-parents of an attribute, excluding itself.
std::vector<int> markov_blanket(const BayesianNetwork& net, int attribute);

// Repeatedly picks a head from the unassigned set by the given rule and
// carves out (MB(head) ∩ unassigned) ∪ {head}. The result is a disjoint
// cover of all attributes. entropies are only consulted for kMaxEntropy;
// ties resolve to the lowest attribute index.
std::vector<Cluster> cluster_attributes(const BayesianNetwork& net,
                                        HeadRule rule,
                                        std::span<const double> entropies,
                                        RngStream& rng);

// Cluster importance factors: each cluster's share of the total attribute
// entropy. Errors when every attribute entropy is zero.
std::vector<double> cluster_importance(const std::vector<Cluster>& clusters,
                                       std::span<const double> entropies);

// Splits eps2 across clusters. Default weighting gives cluster i the share
// (1 / cif_i) / sum_j (1 / cif_j); budgets always sum to eps2.
std::vector<double> budget_allocation(
    std::span<const double> cifs, double eps2,
    BudgetWeighting weighting = BudgetWeighting::kInverseCif);

struct Clustering {
  std::vector<Cluster> clusters;
  double eps2 = 0.0;
};

// cluster_attributes + cluster_importance + budget_allocation in one step,
// with the aggregate invariants checked.
Clustering build_clustering(const BayesianNetwork& net, HeadRule rule,
                            std::span<const double> entropies, double eps2,
                            RngStream& rng,
                            BudgetWeighting weighting =
                                BudgetWeighting::kInverseCif);

}  // namespace dp2pub

#endif  // DP2PUB_CLUSTERING_HPP
