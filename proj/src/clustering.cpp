#include "dp2pub/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dp2pub {

std::vector<int> markov_blanket(const BayesianNetwork& net, int attribute) {
  const int d = net.attribute_count();
  if (attribute < 0 || attribute >= d) {
    throw DataError("attribute index out of range");
  }
  std::set<int> blanket;
  for (int p : net.parents_of(attribute)) {
    blanket.insert(p);
  }
  for (const ApPair& pair : net.pairs()) {
    const auto& parents = pair.parents;
    if (std::find(parents.begin(), parents.end(), attribute) !=
        parents.end()) {
      blanket.insert(pair.attribute);  // child
      blanket.insert(parents.begin(), parents.end());  // co-parents
    }
  }
  blanket.erase(attribute);
  return {blanket.begin(), blanket.end()};
}

std::vector<Cluster> cluster_attributes(const BayesianNetwork& net,
                                        HeadRule rule,
                                        std::span<const double> entropies,
                                        RngStream& rng) {
  const int d = net.attribute_count();
  if (rule == HeadRule::kMaxEntropy &&
      static_cast<int>(entropies.size()) != d) {
    throw DataError("max-entropy head rule needs one entropy per attribute");
  }
  std::vector<int> unassigned(d);
  for (int a = 0; a < d; ++a) unassigned[a] = a;

  std::vector<Cluster> clusters;
  while (!unassigned.empty()) {
    int head = unassigned[0];
    if (rule == HeadRule::kRandom) {
      head = unassigned[rng.next_int(static_cast<int>(unassigned.size()))];
    } else {
      for (int a : unassigned) {
        if (entropies[a] > entropies[head]) {
          head = a;  // ties keep the lowest index
        }
      }
    }
    Cluster cluster;
    cluster.head = head;
    cluster.members.push_back(head);
    for (int b : markov_blanket(net, head)) {
      if (std::find(unassigned.begin(), unassigned.end(), b) !=
          unassigned.end()) {
        cluster.members.push_back(b);
      }
    }
    std::sort(cluster.members.begin(), cluster.members.end());
    for (int m : cluster.members) {
      std::erase(unassigned, m);
    }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

std::vector<double> cluster_importance(const std::vector<Cluster>& clusters,
                                       std::span<const double> entropies) {
  double total = 0.0;
  for (double h : entropies) {
    total += h;
  }
  if (!(total > 0.0)) {
    throw DataError("degenerate entropies");
  }
  std::vector<double> cifs;
  cifs.reserve(clusters.size());
  for (const Cluster& cluster : clusters) {
    double sum = 0.0;
    for (int m : cluster.members) {
      sum += entropies[m];
    }
    cifs.push_back(sum / total);
  }
  return cifs;
}

std::vector<double> budget_allocation(std::span<const double> cifs,
                                      double eps2,
                                      BudgetWeighting weighting) {
  if (!(eps2 > 0.0)) {
    throw DataError("randomization budget must be positive");
  }
  std::vector<double> weights;
  weights.reserve(cifs.size());
  for (double cif : cifs) {
    if (!(cif > 0.0)) {
      throw DataError("zero cluster importance factor");
    }
    weights.push_back(weighting == BudgetWeighting::kInverseCif ? 1.0 / cif
                                                                : cif);
  }
  double total = 0.0;
  for (double w : weights) total += w;

  std::vector<double> budgets(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    budgets[i] = (weights[i] / total) * eps2;
  }
  return budgets;
}

Clustering build_clustering(const BayesianNetwork& net, HeadRule rule,
                            std::span<const double> entropies, double eps2,
                            RngStream& rng, BudgetWeighting weighting) {
  Clustering clustering;
  clustering.eps2 = eps2;
  clustering.clusters = cluster_attributes(net, rule, entropies, rng);
  const std::vector<double> cifs =
      cluster_importance(clustering.clusters, entropies);
  const std::vector<double> budgets =
      budget_allocation(cifs, eps2, weighting);

  double pbc_sum = 0.0;
  double budget_sum = 0.0;
  for (std::size_t i = 0; i < clustering.clusters.size(); ++i) {
    Cluster& cluster = clustering.clusters[i];
    cluster.cif = cifs[i];
    cluster.budget = budgets[i];
    cluster.pbc = budgets[i] / eps2;
    pbc_sum += cluster.pbc;
    budget_sum += cluster.budget;
  }
  if (std::abs(pbc_sum - 1.0) > 1e-12 ||
      std::abs(budget_sum - eps2) > 1e-12 * std::max(1.0, eps2)) {
    throw DataError("budget allocation failed to normalize");
  }
  return clustering;
}

}  // namespace dp2pub
