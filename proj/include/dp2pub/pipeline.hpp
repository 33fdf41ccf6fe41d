#ifndef DP2PUB_PIPELINE_HPP
#define DP2PUB_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dp2pub/local.hpp"

namespace dp2pub {

enum class Mode { kTrusted, kLocal };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

std::string to_string(BudgetWeighting weighting);
BudgetWeighting weighting_from_string(const std::string& name);

struct PipelineConfig {
  Mode mode = Mode::kTrusted;
  double epsilon = 1.0;
  double split = 0.5;  // fraction of epsilon for the network phase (trusted)
  int degree = 2;
  std::uint64_t seed = 0;
  std::vector<int> alphas;  // empty -> schema-dependent default
  int runs = 50;
  BudgetWeighting weighting = BudgetWeighting::kInverseCif;
  bool emit_timing = false;  // wall-clock in the report breaks byte-for-byte
                             // reproducibility, so it is opt-in

  std::string input;
  std::string output;
  std::string report;

  void validate() const;

  // Config file mirrors these field names; unknown keys are rejected.
  static PipelineConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};

// Default marginal widths for evaluation: {3, 4} when every attribute is
// binary, {2, 3} otherwise.
std::vector<int> default_alphas(const AttributeSchema& schema);

struct PublicationReport {
  Mode mode = Mode::kTrusted;
  nlohmann::json config;
  double epsilon = 0.0;
  double epsilon1 = 0.0;      // trusted only
  double epsilon2 = 0.0;      // trusted only
  double per_dim_eps = 0.0;   // local only
  int rows = 0;
  nlohmann::json network;
  std::vector<Cluster> clusters;
  std::vector<AttributePerturbation> diagnostics;
  std::optional<double> wall_ms;

  nlohmann::json to_json(const AttributeSchema& schema) const;
};

// Trusted-server publication: eps1 = split * epsilon buys the private
// network, the rest is allocated across Markov-blanket clusters and spent
// on the double perturbation. Schema, row count, and row order are
// preserved.
std::pair<EncodedDataset, PublicationReport> publish_trusted(
    const EncodedDataset& data, const PipelineConfig& config);

// Semi-honest publication: every row acts as one client that randomizes
// its record locally at eps / d per dimension; the server only post-
// processes the noisy data.
std::pair<EncodedDataset, PublicationReport> publish_local_mode(
    const EncodedDataset& data, const PipelineConfig& config);

// Dispatch on config.mode.
std::pair<EncodedDataset, PublicationReport> publish(
    const EncodedDataset& data, const PipelineConfig& config);

}  // namespace dp2pub

#endif  // DP2PUB_PIPELINE_HPP
