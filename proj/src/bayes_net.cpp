#include "dp2pub/bayes_net.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "dp2pub/info_metrics.hpp"

namespace dp2pub {

namespace {

// Lexicographic size-m combinations of the sorted pool.
std::vector<std::vector<int>> combinations(const std::vector<int>& pool,
                                           int m) {
  std::vector<std::vector<int>> result;
  const int n = static_cast<int>(pool.size());
  if (m < 0 || m > n) {
    return result;
  }
  if (m == 0) {
    result.push_back({});
    return result;
  }
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    std::vector<int> combo(m);
    for (int i = 0; i < m; ++i) combo[i] = pool[idx[i]];
    result.push_back(std::move(combo));
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return result;
}

// Shared by both network builders: entropy of an attribute subset, cached
// across rounds since parent sets repeat between candidates.
class EntropyCache {
 public:
  explicit EntropyCache(const EncodedDataset& data) : data_(data) {}

  double subset_entropy(std::vector<int> attrs) {
    std::sort(attrs.begin(), attrs.end());
    auto it = cache_.find(attrs);
    if (it != cache_.end()) {
      return it->second;
    }
    const double h = joint_entropy(data_, attrs);
    cache_.emplace(std::move(attrs), h);
    return h;
  }

  double score(const ApPair& candidate) {
    if (candidate.parents.empty()) {
      return 0.0;
    }
    std::vector<int> joint = candidate.parents;
    joint.push_back(candidate.attribute);
    const double h_a = subset_entropy({candidate.attribute});
    const double h_p = subset_entropy(candidate.parents);
    const double h_ap = subset_entropy(std::move(joint));
    return std::max(h_a + h_p - h_ap, 0.0);
  }

 private:
  const EncodedDataset& data_;
  std::map<std::vector<int>, double> cache_;
};

bool candidate_is_binary(const AttributeSchema& schema, const ApPair& c) {
  if (schema.domain_size(c.attribute) == 2) {
    return true;
  }
  std::int64_t parent_domain = 1;
  for (int p : c.parents) {
    parent_domain *= schema.domain_size(p);
  }
  return parent_domain == 2;
}

}  // namespace

BayesianNetwork::BayesianNetwork(std::vector<ApPair> pairs, int degree)
    : pairs_(std::move(pairs)), degree_(degree) {
  const int d = static_cast<int>(pairs_.size());
  if (d < 1) {
    throw DataError("network needs at least one pair");
  }
  if (degree_ < 1) {
    throw DataError("network degree must be at least 1");
  }
  pair_of_attribute_.assign(d, -1);
  std::set<int> placed;
  for (int i = 0; i < d; ++i) {
    ApPair& pair = pairs_[i];
    if (pair.attribute < 0 || pair.attribute >= d ||
        !placed.insert(pair.attribute).second) {
      throw DataError("network must contain each attribute exactly once");
    }
    pair_of_attribute_[pair.attribute] = i;
    std::sort(pair.parents.begin(), pair.parents.end());
    if (static_cast<int>(pair.parents.size()) > std::min(degree_, i)) {
      throw DataError("parent set exceeds the degree bound");
    }
    for (int p : pair.parents) {
      if (p == pair.attribute) {
        throw DataError("attribute cannot be its own parent");
      }
      if (!placed.contains(p)) {
        throw DataError("parent must appear earlier in the construction");
      }
    }
  }
}

const std::vector<int>& BayesianNetwork::parents_of(int attribute) const {
  return pairs_.at(pair_of_attribute_.at(attribute)).parents;
}

nlohmann::json BayesianNetwork::to_json(const AttributeSchema& schema) const {
  nlohmann::json out = nlohmann::json::array();
  for (const ApPair& pair : pairs_) {
    nlohmann::json parents = nlohmann::json::array();
    for (int p : pair.parents) {
      parents.push_back(schema.name(p));
    }
    out.push_back({{"attribute", schema.name(pair.attribute)},
                   {"parents", std::move(parents)}});
  }
  return out;
}

BayesianNetwork BayesianNetwork::from_json(const nlohmann::json& doc,
                                           const AttributeSchema& schema,
                                           int degree) {
  std::vector<ApPair> pairs;
  for (const auto& entry : doc) {
    ApPair pair;
    pair.attribute =
        schema.attribute_index(entry.at("attribute").get<std::string>());
    if (pair.attribute < 0) {
      throw DataError("unknown attribute in network JSON");
    }
    for (const auto& p : entry.at("parents")) {
      const int idx = schema.attribute_index(p.get<std::string>());
      if (idx < 0) {
        throw DataError("unknown parent in network JSON");
      }
      pair.parents.push_back(idx);
    }
    pairs.push_back(std::move(pair));
  }
  return BayesianNetwork(std::move(pairs), degree);
}

std::vector<ApPair> enumerate_candidates(std::span<const int> chosen,
                                         std::span<const int> remaining,
                                         int degree) {
  std::vector<int> pool(chosen.begin(), chosen.end());
  std::sort(pool.begin(), pool.end());
  std::vector<int> attrs(remaining.begin(), remaining.end());
  std::sort(attrs.begin(), attrs.end());
  for (int a : attrs) {
    if (std::binary_search(pool.begin(), pool.end(), a)) {
      throw DataError("chosen and remaining attribute sets overlap");
    }
  }
  const int m = std::min<int>(degree, static_cast<int>(pool.size()));
  const std::vector<std::vector<int>> parent_sets = combinations(pool, m);

  std::vector<ApPair> candidates;
  candidates.reserve(attrs.size() * parent_sets.size());
  for (int a : attrs) {
    for (const auto& parents : parent_sets) {
      candidates.push_back(ApPair{a, parents});
    }
  }
  return candidates;
}

int exp_mechanism_select(std::span<const double> scores, double eps_round,
                         std::span<const double> deltas, RngStream& rng) {
  if (scores.empty()) {
    throw DataError("exponential mechanism needs at least one candidate");
  }
  if (scores.size() != deltas.size()) {
    throw DataError("scores and sensitivities differ in length");
  }
  if (!(eps_round > 0.0)) {
    throw DataError("exponential mechanism needs eps > 0");
  }
  const std::size_t n = scores.size();
  Eigen::VectorXd exponents(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(deltas[i] > 0.0)) {
      throw DataError("sensitivity must be positive");
    }
    exponents[i] = eps_round * scores[i] / (2.0 * deltas[i]);
  }
  // Log-space shift keeps the weights finite at large budgets.
  const Eigen::VectorXd weights =
      (exponents.array() - exponents.maxCoeff()).exp();
  return rng.sample(weights);
}

int exp_mechanism_select(std::span<const double> scores, double eps_round,
                         double delta, RngStream& rng) {
  const std::vector<double> deltas(scores.size(), delta);
  return exp_mechanism_select(scores, eps_round, deltas, rng);
}

BayesianNetwork build_dp_network(const EncodedDataset& data, int degree,
                                 double eps1, RngStream& rng) {
  const int d = data.attribute_count();
  if (d < 2) {
    throw DataError("network construction needs at least two attributes");
  }
  if (!(eps1 > 0.0)) {
    throw DataError("network construction needs eps1 > 0");
  }
  if (degree < 1) {
    throw DataError("network degree must be at least 1");
  }
  EntropyCache cache(data);
  const double eps_round = eps1 / (d - 1);
  const std::int64_t n = data.record_count();

  std::vector<ApPair> pairs;
  std::vector<int> chosen;
  std::vector<int> remaining;
  for (int a = 0; a < d; ++a) remaining.push_back(a);

  const int first = remaining[rng.next_int(d)];
  pairs.push_back(ApPair{first, {}});
  chosen.push_back(first);
  std::erase(remaining, first);

  while (!remaining.empty()) {
    const std::vector<ApPair> candidates =
        enumerate_candidates(chosen, remaining, degree);
    std::vector<double> scores(candidates.size());
    std::vector<double> deltas(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      scores[i] = cache.score(candidates[i]);
      deltas[i] = mi_sensitivity(
          n, candidate_is_binary(data.schema(), candidates[i]));
    }
    const int pick = exp_mechanism_select(scores, eps_round, deltas, rng);
    const ApPair& selected = candidates[pick];
    pairs.push_back(selected);
    chosen.push_back(selected.attribute);
    std::erase(remaining, selected.attribute);
  }
  return BayesianNetwork(std::move(pairs), degree);
}

BayesianNetwork build_greedy_network(const EncodedDataset& data, int degree) {
  const int d = data.attribute_count();
  if (d < 2) {
    throw DataError("network construction needs at least two attributes");
  }
  if (degree < 1) {
    throw DataError("network degree must be at least 1");
  }
  EntropyCache cache(data);
  const std::vector<double> entropies = attribute_entropies(data);

  int first = 0;
  for (int a = 1; a < d; ++a) {
    if (entropies[a] > entropies[first]) {
      first = a;  // ties keep the lowest index
    }
  }

  std::vector<ApPair> pairs{ApPair{first, {}}};
  std::vector<int> chosen{first};
  std::vector<int> remaining;
  for (int a = 0; a < d; ++a) {
    if (a != first) remaining.push_back(a);
  }

  while (!remaining.empty()) {
    const std::vector<ApPair> candidates =
        enumerate_candidates(chosen, remaining, degree);
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double score = cache.score(candidates[i]);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    const ApPair& selected = candidates[best];
    pairs.push_back(selected);
    chosen.push_back(selected.attribute);
    std::erase(remaining, selected.attribute);
  }
  return BayesianNetwork(std::move(pairs), degree);
}

DistributionVector network_joint(const BayesianNetwork& net,
                                 const EncodedDataset& data,
                                 std::int64_t cell_cap) {
  const AttributeSchema& schema = data.schema();
  const int d = schema.attribute_count();
  if (net.attribute_count() != d) {
    throw DataError("network does not match the dataset schema");
  }
  std::vector<int> sizes(d);
  for (int a = 0; a < d; ++a) sizes[a] = schema.domain_size(a);
  const std::int64_t cells = checked_cell_count(sizes, cell_cap);

  std::vector<std::int64_t> strides(d);
  strides[d - 1] = 1;
  for (int j = d - 1; j > 0; --j) {
    strides[j - 1] = strides[j] * sizes[j];
  }

  // Per pair: counts over (parents..., child), child axis fastest.
  struct Conditional {
    int child = 0;
    std::vector<int> parents;
    Eigen::VectorXd counts;
    std::vector<std::int64_t> parent_strides;  // over the counts tensor
  };
  std::vector<Conditional> conditionals;
  for (const ApPair& pair : net.pairs()) {
    Conditional cond;
    cond.child = pair.attribute;
    cond.parents = pair.parents;
    std::vector<int> axes = pair.parents;
    axes.push_back(pair.attribute);
    const DistributionVector marg = empirical_marginal(data, axes, cell_cap);
    cond.counts = marg.probabilities * data.record_count();

    cond.parent_strides.resize(cond.parents.size());
    std::int64_t stride = sizes[cond.child];
    for (std::size_t j = cond.parents.size(); j > 0; --j) {
      cond.parent_strides[j - 1] = stride;
      stride *= sizes[cond.parents[j - 1]];
    }
    conditionals.push_back(std::move(cond));
  }

  Eigen::VectorXd joint(cells);
  std::vector<int> coord(d);
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    for (int j = 0; j < d; ++j) {
      coord[j] = static_cast<int>((cell / strides[j]) % sizes[j]);
    }
    double p = 1.0;
    for (const Conditional& cond : conditionals) {
      std::int64_t base = 0;
      for (std::size_t j = 0; j < cond.parents.size(); ++j) {
        base += cond.parent_strides[j] * coord[cond.parents[j]];
      }
      const int s_child = sizes[cond.child];
      const double row_total =
          cond.counts.segment(base, s_child).sum();
      if (row_total > 0.0) {
        p *= cond.counts[base + coord[cond.child]] / row_total;
      } else {
        p *= 1.0 / s_child;  // unseen parent configuration
      }
    }
    joint[cell] = p;
  }
  return DistributionVector{std::move(sizes), std::move(joint)};
}

double kl_network_divergence(const EncodedDataset& data,
                             const BayesianNetwork& net,
                             std::int64_t cell_cap) {
  const int d = data.attribute_count();
  std::vector<int> all(d);
  for (int a = 0; a < d; ++a) all[a] = a;

  double sum_h = 0.0;
  double sum_i = 0.0;
  for (const ApPair& pair : net.pairs()) {
    sum_h += joint_entropy(data, std::span<const int>{&pair.attribute, 1},
                           cell_cap);
    sum_i += mutual_information(data, pair.attribute, pair.parents, cell_cap);
  }
  return sum_h - sum_i - joint_entropy(data, all, cell_cap);
}

}  // namespace dp2pub
