#include "dp2pub/pram.hpp"

#include <algorithm>

namespace dp2pub {

ClusterPerturbation pram_cluster(const EncodedDataset& data,
                                 std::span<const int> members, double budget,
                                 std::uint64_t master_seed) {
  if (members.empty()) {
    throw DataError("cluster has no members");
  }
  if (!(budget > 0.0)) {
    throw DataError("cluster budget must be positive");
  }
  ClusterPerturbation result;
  result.members.assign(members.begin(), members.end());
  std::sort(result.members.begin(), result.members.end());

  const double eps = budget / static_cast<double>(result.members.size());
  for (int attr : result.members) {
    const int s = data.schema().domain_size(attr);

    AttributePerturbation diag;
    diag.attribute = attr;
    diag.eps = eps;
    diag.q = rr_matrix(s, eps);

    RngStream first(mix_seed(master_seed, stage::kFirstPerturb,
                             static_cast<std::uint64_t>(attr)));
    const Eigen::VectorXi once =
        apply_channel(data.column(attr), diag.q, first);

    diag.lambda_hat = empirical_distribution(once, s);
    DistributionEstimate est = estimate_distribution(diag.lambda_hat, diag.q);
    diag.pi_hat = std::move(est.pi_hat);
    diag.clamped = est.clamped;
    diag.q_tilde = inverse_channel(diag.q, diag.pi_hat);

    RngStream second(mix_seed(master_seed, stage::kSecondPerturb,
                              static_cast<std::uint64_t>(attr)));
    result.columns.push_back(apply_channel(once, diag.q_tilde, second));
    result.diagnostics.push_back(std::move(diag));
  }
  return result;
}

TransitionMatrix compound_channel(const ClusterPerturbation& result) {
  std::vector<TransitionMatrix> parts;
  parts.reserve(result.diagnostics.size());
  for (const AttributePerturbation& diag : result.diagnostics) {
    parts.push_back(diag.q_tilde);
  }
  return kronecker_compound(parts);
}

}  // namespace dp2pub
