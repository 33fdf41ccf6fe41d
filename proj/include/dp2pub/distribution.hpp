#ifndef DP2PUB_DISTRIBUTION_HPP
#define DP2PUB_DISTRIBUTION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dp2pub/dataset.hpp"

namespace dp2pub {

// Dense joint distributions beyond this many cells are refused.
inline constexpr std::int64_t kDefaultCellCap = std::int64_t{1} << 24;

// Dense probability vector over a product domain, row-major with the last
// attribute varying fastest.
struct DistributionVector {
  std::vector<int> domain_sizes;
  Eigen::VectorXd probabilities;

  std::int64_t cell_count() const { return probabilities.size(); }

  // Entries non-negative and summing to 1 within tol; length matches domain.
  void validate(double tol = 1e-9) const;
};

// Product of domain sizes; throws DataError when it exceeds cell_cap.
std::int64_t checked_cell_count(std::span<const int> domain_sizes,
                                std::int64_t cell_cap = kDefaultCellCap);

// Empirical joint distribution over the listed attributes, axes in the
// given order. attrs must be non-empty, distinct, and valid.
DistributionVector empirical_marginal(const EncodedDataset& data,
                                      std::span<const int> attrs,
                                      std::int64_t cell_cap = kDefaultCellCap);

// Sums out all axes not listed; result axes follow keep_positions order.
// Positions index into dist.domain_sizes, not schema attributes.
DistributionVector marginalize(const DistributionVector& dist,
                               std::span<const int> keep_positions);

// Empirical distribution of a single encoded column.
Eigen::VectorXd empirical_distribution(
    const Eigen::Ref<const Eigen::VectorXi>& column, int domain_size);

}  // namespace dp2pub

#endif  // DP2PUB_DISTRIBUTION_HPP
