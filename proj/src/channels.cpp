#include "dp2pub/channels.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace dp2pub {

TransitionMatrix::TransitionMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw DataError("transition matrix must be square and non-empty");
  }
  if ((entries_.array() < 0.0).any()) {
    throw DataError("transition matrix has negative entries");
  }
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    if (std::abs(entries_.row(i).sum() - 1.0) > 1e-12) {
      throw DataError("transition matrix row does not sum to 1");
    }
  }
}

TransitionMatrix rr_matrix(int domain_size, double eps) {
  if (domain_size < 2) {
    throw DataError("randomized response needs a domain of size >= 2");
  }
  if (!(eps > 0.0)) {
    throw DataError("randomized response needs eps > 0");
  }
  // Written with e^-eps so large budgets do not overflow.
  const double w = std::exp(-eps);
  const double denom = 1.0 + (domain_size - 1) * w;
  const double keep = 1.0 / denom;
  const double move = w / denom;

  Eigen::MatrixXd m =
      Eigen::MatrixXd::Constant(domain_size, domain_size, move);
  m.diagonal().setConstant(keep);
  return TransitionMatrix(std::move(m));
}

Eigen::VectorXi apply_channel(const Eigen::Ref<const Eigen::VectorXi>& column,
                              const TransitionMatrix& channel,
                              RngStream& rng) {
  const int s = channel.size();
  Eigen::VectorXi out(column.size());
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    const int v = column[i];
    if (v < 0 || v >= s) {
      throw DataError("category index out of range for channel");
    }
    out[i] = rng.sample(channel.entries().row(v).transpose());
  }
  return out;
}

DistributionEstimate estimate_distribution(
    const Eigen::Ref<const Eigen::VectorXd>& lambda_hat,
    const TransitionMatrix& q) {
  if (lambda_hat.size() != q.size()) {
    throw DataError("observed distribution does not match channel size");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(q.entries().transpose());
  if (!lu.isInvertible()) {
    throw DataError("channel is singular; cannot estimate the source");
  }
  Eigen::VectorXd raw = lu.solve(lambda_hat);

  DistributionEstimate est;
  est.clamped = (raw.array() < 0.0).any();
  if (est.clamped) {
    raw = raw.cwiseMax(0.0);
  }
  const double total = raw.sum();
  if (!(total > 0.0)) {
    throw DataError("estimated distribution has no positive mass");
  }
  est.pi_hat = raw / total;
  return est;
}

TransitionMatrix inverse_channel(
    const TransitionMatrix& q,
    const Eigen::Ref<const Eigen::VectorXd>& pi_hat) {
  const int s = q.size();
  if (pi_hat.size() != s) {
    throw DataError("estimate does not match channel size");
  }
  // denom_i = sum_k pi_hat_k q(k, i), the estimated observed mass at c_i.
  const Eigen::VectorXd denom = q.entries().transpose() * pi_hat;
  Eigen::MatrixXd result(s, s);
  for (int i = 0; i < s; ++i) {
    if (!(denom[i] > 0.0)) {
      throw DataError("zero denominator column in inverse channel");
    }
    for (int j = 0; j < s; ++j) {
      result(i, j) = pi_hat[j] * q(j, i) / denom[i];
    }
    result.row(i) /= result.row(i).sum();
  }
  return TransitionMatrix(std::move(result));
}

TransitionMatrix kronecker(const TransitionMatrix& a,
                           const TransitionMatrix& b) {
  Eigen::MatrixXd product =
      Eigen::kroneckerProduct(a.entries(), b.entries());
  // Renormalize rows; products of row sums pick up rounding residue.
  for (Eigen::Index i = 0; i < product.rows(); ++i) {
    product.row(i) /= product.row(i).sum();
  }
  return TransitionMatrix(std::move(product));
}

TransitionMatrix kronecker_compound(std::span<const TransitionMatrix> parts) {
  if (parts.empty()) {
    throw DataError("compound channel needs at least one part");
  }
  TransitionMatrix result = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    result = kronecker(result, parts[i]);
  }
  return result;
}

}  // namespace dp2pub
