#ifndef DP2PUB_CHANNELS_HPP
#define DP2PUB_CHANNELS_HPP

#include <span>

#include <Eigen/Dense>

#include "dp2pub/errors.hpp"
#include "dp2pub/rng.hpp"

namespace dp2pub {

// Convention used throughout: rows index the source category and columns the
// target, so entry (i, j) = Pr(output c_j | input c_i) and every row sums
// to 1. Distributions are column vectors; pushing pi through a channel M
// gives the output distribution M^T pi.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(Eigen::MatrixXd entries);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int from, int to) const { return entries_(from, to); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  static TransitionMatrix identity(int size) {
    return TransitionMatrix(Eigen::MatrixXd::Identity(size, size));
  }

 private:
  Eigen::MatrixXd entries_;
};

// Randomized-response channel over s categories: keep with probability
// e^eps / (s - 1 + e^eps), otherwise switch uniformly at random to one of
// the other s - 1 categories. Requires s >= 2 and eps > 0.
TransitionMatrix rr_matrix(int domain_size, double eps);

// Resamples every entry of the column independently from its matrix row.
Eigen::VectorXi apply_channel(const Eigen::Ref<const Eigen::VectorXi>& column,
                              const TransitionMatrix& channel, RngStream& rng);

struct DistributionEstimate {
  Eigen::VectorXd pi_hat;
  bool clamped = false;  // negative raw entries were clamped and renormalized
};

// Inverts the observed distribution through the channel: solves
// Q^T pi = lambda_hat, then clamps negatives to 0 and renormalizes.
DistributionEstimate estimate_distribution(
    const Eigen::Ref<const Eigen::VectorXd>& lambda_hat,
    const TransitionMatrix& q);

// Bayes-posterior channel for the second perturbation:
// q~(i, j) = pi_hat_j * q(j, i) / sum_k pi_hat_k * q(k, i).
// Rows sum to 1 by construction.
TransitionMatrix inverse_channel(const TransitionMatrix& q,
                                 const Eigen::Ref<const Eigen::VectorXd>&
                                     pi_hat);

// Compound channel of two independent channels; block layout matches the
// row-major compound index (i, k) -> i * b.size() + k.
TransitionMatrix kronecker(const TransitionMatrix& a,
                           const TransitionMatrix& b);

// Left fold of kronecker over one or more channels.
TransitionMatrix kronecker_compound(std::span<const TransitionMatrix> parts);

}  // namespace dp2pub

#endif  // DP2PUB_CHANNELS_HPP
