#include "dp2pub/local.hpp"

#include <cmath>

#include "dp2pub/info_metrics.hpp"

namespace dp2pub {

std::vector<int> randomize_record(const std::vector<int>& record,
                                  const AttributeSchema& schema,
                                  const LocalBudget& budget, RngStream& rng) {
  budget.validate();
  const int d = schema.attribute_count();
  if (static_cast<int>(record.size()) != d || budget.dimensions != d) {
    throw DataError("record width does not match schema");
  }
  const double eps = budget.per_dim_eps();

  std::vector<int> noisy(record.size());
  for (int j = 0; j < d; ++j) {
    const int s = schema.domain_size(j);
    const int v = record[j];
    if (v < 0 || v >= s) {
      throw DataError("record value out of range");
    }
    // keep = e^eps / (s - 1 + e^eps), via e^-eps to stay finite.
    const double w = std::exp(-eps);
    const double keep = 1.0 / (1.0 + (s - 1) * w);
    if (rng.next_double() < keep) {
      noisy[j] = v;
    } else {
      const int other = rng.next_int(s - 1);
      noisy[j] = other < v ? other : other + 1;
    }
  }
  return noisy;
}

AggregateResult aggregate(const AttributeSchema& schema,
                          const std::vector<std::vector<int>>&
                              noisy_records) {
  if (noisy_records.empty()) {
    throw DataError("no records to aggregate");
  }
  const int d = schema.attribute_count();
  Eigen::MatrixXi rows(static_cast<Eigen::Index>(noisy_records.size()), d);
  for (std::size_t i = 0; i < noisy_records.size(); ++i) {
    if (static_cast<int>(noisy_records[i].size()) != d) {
      throw DataError("record width does not match schema");
    }
    for (int j = 0; j < d; ++j) {
      rows(static_cast<Eigen::Index>(i), j) = noisy_records[i][j];
    }
  }
  EncodedDataset noisy(schema, std::move(rows));
  std::vector<Eigen::VectorXd> lambda_hats;
  lambda_hats.reserve(d);
  for (int j = 0; j < d; ++j) {
    lambda_hats.push_back(
        empirical_distribution(noisy.column(j), schema.domain_size(j)));
  }
  return AggregateResult{std::move(noisy), std::move(lambda_hats)};
}

LocalPublication publish_local(const EncodedDataset& noisy,
                               const std::vector<Eigen::VectorXd>&
                                   lambda_hats,
                               double total_eps, int degree,
                               std::uint64_t master_seed) {
  const AttributeSchema& schema = noisy.schema();
  const int d = schema.attribute_count();
  if (static_cast<int>(lambda_hats.size()) != d) {
    throw DataError("need one observed distribution per attribute");
  }
  LocalBudget budget{total_eps, d};
  budget.validate();
  const double eps = budget.per_dim_eps();

  // Estimate each source law through the client channel and prepare the
  // second-stage inverse channels.
  std::vector<AttributePerturbation> diagnostics;
  std::vector<double> estimate_entropies(d);
  for (int j = 0; j < d; ++j) {
    AttributePerturbation diag;
    diag.attribute = j;
    diag.eps = eps;
    diag.q = rr_matrix(schema.domain_size(j), eps);
    diag.lambda_hat = lambda_hats[j];
    DistributionEstimate est = estimate_distribution(diag.lambda_hat, diag.q);
    diag.pi_hat = std::move(est.pi_hat);
    diag.clamped = est.clamped;
    diag.q_tilde = inverse_channel(diag.q, diag.pi_hat);
    estimate_entropies[j] = entropy(diag.pi_hat);
    diagnostics.push_back(std::move(diag));
  }

  const BayesianNetwork network = build_greedy_network(noisy, degree);

  // Head selection is deterministic under the max-entropy rule; the stream
  // is only consulted if the rule ever changes.
  RngStream head_rng(mix_seed(master_seed, stage::kClusterHeads));
  Clustering clustering;
  clustering.eps2 = 0.0;  // whole budget already spent client-side
  clustering.clusters = cluster_attributes(network, HeadRule::kMaxEntropy,
                                           estimate_entropies, head_rng);
  // CIF/PBC reported for diagnostics only; left at zero for degenerate
  // estimates instead of failing the publication.
  bool entropies_usable = false;
  for (double h : estimate_entropies) {
    if (h > 0.0) entropies_usable = true;
  }
  if (entropies_usable) {
    const std::vector<double> cifs =
        cluster_importance(clustering.clusters, estimate_entropies);
    double inv_total = 0.0;
    bool all_positive = true;
    for (double cif : cifs) {
      if (cif > 0.0) {
        inv_total += 1.0 / cif;
      } else {
        all_positive = false;
      }
    }
    for (std::size_t i = 0; i < cifs.size(); ++i) {
      clustering.clusters[i].cif = cifs[i];
      if (all_positive) {
        clustering.clusters[i].pbc = (1.0 / cifs[i]) / inv_total;
      }
    }
  }

  std::vector<std::pair<int, Eigen::VectorXi>> replacements;
  for (int j = 0; j < d; ++j) {
    RngStream rng(mix_seed(master_seed, stage::kSecondPerturb,
                           static_cast<std::uint64_t>(j)));
    replacements.emplace_back(
        j, apply_channel(noisy.column(j), diagnostics[j].q_tilde, rng));
  }

  return LocalPublication{noisy.with_columns(replacements), network,
                          std::move(clustering), std::move(diagnostics),
                          budget};
}

}  // namespace dp2pub
