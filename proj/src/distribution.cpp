#include "dp2pub/distribution.hpp"

#include <cmath>
#include <set>
#include <string>

namespace dp2pub {

void DistributionVector::validate(double tol) const {
  std::int64_t cells = 1;
  for (int s : domain_sizes) {
    if (s < 1) {
      throw DataError("distribution domain size must be positive");
    }
    cells *= s;
  }
  if (cells != probabilities.size()) {
    throw DataError("distribution length does not match its domain");
  }
  if ((probabilities.array() < 0.0).any()) {
    throw DataError("distribution has negative entries");
  }
  if (std::abs(probabilities.sum() - 1.0) > tol) {
    throw DataError("distribution does not sum to 1");
  }
}

std::int64_t checked_cell_count(std::span<const int> domain_sizes,
                                std::int64_t cell_cap) {
  std::int64_t cells = 1;
  for (int s : domain_sizes) {
    if (s < 1) {
      throw DataError("domain size must be positive");
    }
    cells *= s;
    if (cells > cell_cap) {
      throw DataError("product domain exceeds the cell cap of " +
                      std::to_string(cell_cap) + " cells");
    }
  }
  return cells;
}

DistributionVector empirical_marginal(const EncodedDataset& data,
                                      std::span<const int> attrs,
                                      std::int64_t cell_cap) {
  if (attrs.empty()) {
    throw DataError("attribute list must not be empty");
  }
  const int d = data.attribute_count();
  std::set<int> seen;
  std::vector<int> sizes;
  sizes.reserve(attrs.size());
  for (int a : attrs) {
    if (a < 0 || a >= d) {
      throw DataError("attribute index out of range: " + std::to_string(a));
    }
    if (!seen.insert(a).second) {
      throw DataError("duplicate attribute index: " + std::to_string(a));
    }
    sizes.push_back(data.schema().domain_size(a));
  }
  const std::int64_t cells = checked_cell_count(sizes, cell_cap);

  // Row-major strides, last attribute fastest.
  const std::size_t m = attrs.size();
  std::vector<std::int64_t> strides(m);
  strides[m - 1] = 1;
  for (std::size_t j = m - 1; j > 0; --j) {
    strides[j - 1] = strides[j] * sizes[j];
  }

  Eigen::VectorXd counts = Eigen::VectorXd::Zero(cells);
  const Eigen::MatrixXi& rows = data.rows();
  const int n = data.record_count();
  for (int i = 0; i < n; ++i) {
    std::int64_t cell = 0;
    for (std::size_t j = 0; j < m; ++j) {
      cell += strides[j] * rows(i, attrs[j]);
    }
    counts[cell] += 1.0;
  }

  DistributionVector dist{std::move(sizes), counts / static_cast<double>(n)};
  return dist;
}

DistributionVector marginalize(const DistributionVector& dist,
                               std::span<const int> keep_positions) {
  const std::size_t rank = dist.domain_sizes.size();
  if (keep_positions.empty()) {
    throw DataError("must keep at least one axis");
  }
  std::set<int> seen;
  std::vector<int> out_sizes;
  for (int p : keep_positions) {
    if (p < 0 || static_cast<std::size_t>(p) >= rank) {
      throw DataError("axis position out of range");
    }
    if (!seen.insert(p).second) {
      throw DataError("duplicate axis position");
    }
    out_sizes.push_back(dist.domain_sizes[p]);
  }

  std::vector<std::int64_t> in_strides(rank);
  in_strides[rank - 1] = 1;
  for (std::size_t j = rank - 1; j > 0; --j) {
    in_strides[j - 1] = in_strides[j] * dist.domain_sizes[j];
  }
  const std::size_t out_rank = keep_positions.size();
  std::vector<std::int64_t> out_strides(out_rank);
  out_strides[out_rank - 1] = 1;
  for (std::size_t j = out_rank - 1; j > 0; --j) {
    out_strides[j - 1] = out_strides[j] * out_sizes[j];
  }

  std::int64_t out_cells = 1;
  for (int s : out_sizes) out_cells *= s;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(out_cells);

  const std::int64_t in_cells = dist.cell_count();
  for (std::int64_t cell = 0; cell < in_cells; ++cell) {
    std::int64_t out_cell = 0;
    for (std::size_t j = 0; j < out_rank; ++j) {
      const int p = keep_positions[j];
      const std::int64_t coord =
          (cell / in_strides[p]) % dist.domain_sizes[p];
      out_cell += out_strides[j] * coord;
    }
    out[out_cell] += dist.probabilities[cell];
  }
  return DistributionVector{std::move(out_sizes), std::move(out)};
}

Eigen::VectorXd empirical_distribution(
    const Eigen::Ref<const Eigen::VectorXi>& column, int domain_size) {
  if (column.size() == 0) {
    throw DataError("column must not be empty");
  }
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(domain_size);
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    const int v = column[i];
    if (v < 0 || v >= domain_size) {
      throw DataError("category index out of range");
    }
    counts[v] += 1.0;
  }
  return counts / static_cast<double>(column.size());
}

}  // namespace dp2pub
