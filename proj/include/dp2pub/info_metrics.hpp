#ifndef DP2PUB_INFO_METRICS_HPP
#define DP2PUB_INFO_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dp2pub/distribution.hpp"

namespace dp2pub {

// All information measures are in bits (log base 2).

// Shannon entropy of a probability vector, with 0 * log 0 := 0.
double entropy(const Eigen::Ref<const Eigen::VectorXd>& probabilities);

inline double entropy(const DistributionVector& dist) {
  return entropy(dist.probabilities);
}

// Entropy of the empirical joint over the listed attributes.
double joint_entropy(const EncodedDataset& data, std::span<const int> attrs,
                     std::int64_t cell_cap = kDefaultCellCap);

// I(A; parents) = H(A) + H(parents) - H(A, parents), clamped at 0.
// An empty parent set yields 0.
double mutual_information(const EncodedDataset& data, int attribute,
                          std::span<const int> parents,
                          std::int64_t cell_cap = kDefaultCellCap);

// Global sensitivity of mutual information on n records; the first branch
// applies when either the child or the compound parent domain is binary.
double mi_sensitivity(std::int64_t record_count, bool any_binary);

// Per-attribute empirical entropies, H(A_0) .. H(A_{d-1}).
std::vector<double> attribute_entropies(const EncodedDataset& data);

}  // namespace dp2pub

#endif  // DP2PUB_INFO_METRICS_HPP
