#include "dp2pub/info_metrics.hpp"

#include <algorithm>
#include <cmath>

namespace dp2pub {

double entropy(const Eigen::Ref<const Eigen::VectorXd>& probabilities) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (p > 0.0) {
      h -= p * std::log2(p);
    }
  }
  return std::max(h, 0.0);
}

double joint_entropy(const EncodedDataset& data, std::span<const int> attrs,
                     std::int64_t cell_cap) {
  return entropy(empirical_marginal(data, attrs, cell_cap));
}

double mutual_information(const EncodedDataset& data, int attribute,
                          std::span<const int> parents,
                          std::int64_t cell_cap) {
  if (parents.empty()) {
    return 0.0;
  }
  for (int p : parents) {
    if (p == attribute) {
      throw DataError("attribute cannot be its own parent");
    }
  }
  std::vector<int> joint{attribute};
  joint.insert(joint.end(), parents.begin(), parents.end());

  const double h_a = joint_entropy(data, std::span<const int>{&attribute, 1},
                                   cell_cap);
  const double h_p = joint_entropy(data, parents, cell_cap);
  const double h_ap = joint_entropy(data, joint, cell_cap);
  // Tiny negatives are floating-point residue of the decomposition.
  return std::max(h_a + h_p - h_ap, 0.0);
}

double mi_sensitivity(std::int64_t record_count, bool any_binary) {
  if (record_count < 2) {
    throw DataError("mutual-information sensitivity needs n >= 2");
  }
  const double n = static_cast<double>(record_count);
  if (any_binary) {
    return (1.0 / n) * std::log2(n) +
           ((n - 1.0) / n) * std::log2(n / (n - 1.0));
  }
  return (2.0 / n) * std::log2((n + 1.0) / 2.0) +
         ((n - 1.0) / n) * std::log2((n + 1.0) / (n - 1.0));
}

std::vector<double> attribute_entropies(const EncodedDataset& data) {
  const int d = data.attribute_count();
  std::vector<double> result(d);
  for (int a = 0; a < d; ++a) {
    result[a] = entropy(empirical_distribution(
        data.column(a), data.schema().domain_size(a)));
  }
  return result;
}

}  // namespace dp2pub
