#include "dp2pub/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "dp2pub/info_metrics.hpp"

namespace dp2pub {

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v[i]);
  }
  return out;
}

nlohmann::json clusters_to_json(const std::vector<Cluster>& clusters,
                                const AttributeSchema& schema) {
  nlohmann::json out = nlohmann::json::array();
  for (const Cluster& c : clusters) {
    nlohmann::json members = nlohmann::json::array();
    for (int m : c.members) {
      members.push_back(schema.name(m));
    }
    out.push_back({{"head", schema.name(c.head)},
                   {"members", std::move(members)},
                   {"cif", c.cif},
                   {"pbc", c.pbc},
                   {"budget", c.budget}});
  }
  return out;
}

nlohmann::json diagnostics_to_json(
    const std::vector<AttributePerturbation>& diagnostics,
    const AttributeSchema& schema) {
  nlohmann::json out = nlohmann::json::array();
  for (const AttributePerturbation& d : diagnostics) {
    out.push_back({{"attribute", schema.name(d.attribute)},
                   {"eps", d.eps},
                   {"lambda_hat", vector_to_json(d.lambda_hat)},
                   {"pi_hat", vector_to_json(d.pi_hat)},
                   {"clamped", d.clamped}});
  }
  return out;
}

}  // namespace

std::string to_string(Mode mode) {
  return mode == Mode::kTrusted ? "trusted" : "local";
}

Mode mode_from_string(const std::string& name) {
  if (name == "trusted") return Mode::kTrusted;
  if (name == "local") return Mode::kLocal;
  throw UsageError("unknown mode: " + name);
}

std::string to_string(BudgetWeighting weighting) {
  return weighting == BudgetWeighting::kInverseCif ? "inverse-cif"
                                                   : "proportional-cif";
}

BudgetWeighting weighting_from_string(const std::string& name) {
  if (name == "inverse-cif") return BudgetWeighting::kInverseCif;
  if (name == "proportional-cif") return BudgetWeighting::kProportionalCif;
  throw UsageError("unknown budget weighting: " + name);
}

void PipelineConfig::validate() const {
  if (!(epsilon > 0.0)) {
    throw UsageError("epsilon must be positive");
  }
  if (!(split > 0.0) || !(split < 1.0)) {
    throw UsageError("split must lie strictly between 0 and 1");
  }
  if (degree < 1) {
    throw UsageError("degree must be at least 1");
  }
  if (runs < 1) {
    throw UsageError("runs must be at least 1");
  }
  for (int a : alphas) {
    if (a < 1) {
      throw UsageError("alpha must be at least 1");
    }
  }
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& doc) {
  PipelineConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "mode") {
      config.mode = mode_from_string(value.get<std::string>());
    } else if (key == "epsilon") {
      config.epsilon = value.get<double>();
    } else if (key == "split") {
      config.split = value.get<double>();
    } else if (key == "degree") {
      config.degree = value.get<int>();
    } else if (key == "seed") {
      config.seed = value.get<std::uint64_t>();
    } else if (key == "alpha") {
      config.alphas = value.get<std::vector<int>>();
    } else if (key == "runs") {
      config.runs = value.get<int>();
    } else if (key == "budget_weighting") {
      config.weighting = weighting_from_string(value.get<std::string>());
    } else if (key == "emit_timing") {
      config.emit_timing = value.get<bool>();
    } else if (key == "input") {
      config.input = value.get<std::string>();
    } else if (key == "output") {
      config.output = value.get<std::string>();
    } else if (key == "report") {
      config.report = value.get<std::string>();
    } else {
      throw UsageError("unknown config key: " + key);
    }
  }
  return config;
}

nlohmann::json PipelineConfig::to_json() const {
  return {{"mode", to_string(mode)},
          {"epsilon", epsilon},
          {"split", split},
          {"degree", degree},
          {"seed", seed},
          {"alpha", alphas},
          {"runs", runs},
          {"budget_weighting", to_string(weighting)}};
}

std::vector<int> default_alphas(const AttributeSchema& schema) {
  bool all_binary = true;
  for (int a = 0; a < schema.attribute_count(); ++a) {
    if (schema.domain_size(a) != 2) {
      all_binary = false;
      break;
    }
  }
  std::vector<int> alphas = all_binary ? std::vector<int>{3, 4}
                                       : std::vector<int>{2, 3};
  while (!alphas.empty() && alphas.back() > schema.attribute_count()) {
    alphas.pop_back();
  }
  return alphas;
}

nlohmann::json PublicationReport::to_json(
    const AttributeSchema& schema) const {
  nlohmann::json budget;
  if (mode == Mode::kTrusted) {
    budget = {{"epsilon", epsilon},
              {"epsilon1", epsilon1},
              {"epsilon2", epsilon2}};
  } else {
    budget = {{"epsilon", epsilon}, {"per_dim_eps", per_dim_eps}};
  }
  nlohmann::json out = {{"mode", to_string(mode)},
                        {"config", config},
                        {"budget", std::move(budget)},
                        {"rows", rows},
                        {"network", network},
                        {"clusters", clusters_to_json(clusters, schema)},
                        {"attributes",
                         diagnostics_to_json(diagnostics, schema)}};
  if (wall_ms) {
    out["timing"] = {{"publish_ms", *wall_ms}};
  }
  return out;
}

std::pair<EncodedDataset, PublicationReport> publish_trusted(
    const EncodedDataset& data, const PipelineConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  if (data.attribute_count() < 2) {
    throw DataError("publication needs at least two attributes");
  }
  const double eps1 = config.split * config.epsilon;
  const double eps2 = config.epsilon - eps1;

  RngStream net_rng(mix_seed(config.seed, stage::kNetwork));
  const BayesianNetwork network =
      build_dp_network(data, config.degree, eps1, net_rng);

  const std::vector<double> entropies = attribute_entropies(data);
  RngStream head_rng(mix_seed(config.seed, stage::kClusterHeads));
  const Clustering clustering =
      build_clustering(network, HeadRule::kRandom, entropies, eps2, head_rng,
                       config.weighting);

  PublicationReport report;
  report.mode = Mode::kTrusted;
  report.config = config.to_json();
  report.epsilon = config.epsilon;
  report.epsilon1 = eps1;
  report.epsilon2 = eps2;
  report.rows = data.record_count();
  report.network = network.to_json(data.schema());
  report.clusters = clustering.clusters;

  std::vector<std::pair<int, Eigen::VectorXi>> replacements;
  for (const Cluster& cluster : clustering.clusters) {
    ClusterPerturbation perturbed =
        pram_cluster(data, cluster.members, cluster.budget, config.seed);
    for (std::size_t i = 0; i < perturbed.members.size(); ++i) {
      replacements.emplace_back(perturbed.members[i],
                                std::move(perturbed.columns[i]));
    }
    for (AttributePerturbation& diag : perturbed.diagnostics) {
      report.diagnostics.push_back(std::move(diag));
    }
  }
  // Report diagnostics in schema order, not cluster-discovery order.
  std::sort(report.diagnostics.begin(), report.diagnostics.end(),
            [](const auto& a, const auto& b) {
              return a.attribute < b.attribute;
            });

  EncodedDataset published = data.with_columns(replacements);
  if (config.emit_timing) {
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  }
  return {std::move(published), std::move(report)};
}

std::pair<EncodedDataset, PublicationReport> publish_local_mode(
    const EncodedDataset& data, const PipelineConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const AttributeSchema& schema = data.schema();
  const int d = data.attribute_count();
  if (d < 2) {
    throw DataError("publication needs at least two attributes");
  }
  const LocalBudget budget{config.epsilon, d};
  budget.validate();

  // Each record is one client with its own substream.
  std::vector<std::vector<int>> noisy_records;
  noisy_records.reserve(data.record_count());
  for (int i = 0; i < data.record_count(); ++i) {
    std::vector<int> record(d);
    for (int j = 0; j < d; ++j) {
      record[j] = data.rows()(i, j);
    }
    RngStream client(mix_seed(config.seed, stage::kClient,
                              static_cast<std::uint64_t>(i)));
    noisy_records.push_back(
        randomize_record(record, schema, budget, client));
  }

  AggregateResult aggregated = aggregate(schema, noisy_records);
  LocalPublication publication =
      publish_local(aggregated.noisy, aggregated.lambda_hats, config.epsilon,
                    config.degree, config.seed);

  PublicationReport report;
  report.mode = Mode::kLocal;
  report.config = config.to_json();
  report.epsilon = config.epsilon;
  report.per_dim_eps = budget.per_dim_eps();
  report.rows = data.record_count();
  report.network = publication.network.to_json(schema);
  report.clusters = publication.clustering.clusters;
  report.diagnostics = std::move(publication.diagnostics);
  if (config.emit_timing) {
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  }
  return {std::move(publication.published), std::move(report)};
}

std::pair<EncodedDataset, PublicationReport> publish(
    const EncodedDataset& data, const PipelineConfig& config) {
  return config.mode == Mode::kTrusted ? publish_trusted(data, config)
                                       : publish_local_mode(data, config);
}

}  // namespace dp2pub
