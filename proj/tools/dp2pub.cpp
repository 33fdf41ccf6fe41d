// Command-line front end: publish, sweep, network, evaluate.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dp2pub/evaluate.hpp"

namespace {

using dp2pub::DataError;
using dp2pub::UsageError;

struct CommonFlags {
  std::string input;
  std::string output;
  std::string report;
  std::string config_path;
  std::string schema_path;
  std::string mode;
  std::string weighting;
  double epsilon = 0.0;
  double split = 0.0;
  int degree = 0;
  std::uint64_t seed = 0;
  std::vector<int> alphas;
  int runs = 0;
  bool emit_timing = false;
};

void add_common_options(CLI::App* cmd, CommonFlags* flags,
                        bool scalar_epsilon = true) {
  cmd->add_option("--input", flags->input, "Input CSV (header row required)");
  cmd->add_option("--config", flags->config_path,
                  "JSON config file; flags override its values");
  cmd->add_option("--schema", flags->schema_path,
                  "Optional schema JSON for the input CSV");
  cmd->add_option("--mode", flags->mode, "trusted or local");
  if (scalar_epsilon) {
    cmd->add_option("--epsilon", flags->epsilon, "Total privacy budget");
  }
  cmd->add_option("--split", flags->split,
                  "Fraction of epsilon for the network phase (trusted)");
  cmd->add_option("--degree", flags->degree, "Network degree k");
  cmd->add_option("--seed", flags->seed, "Master seed");
  cmd->add_option("--alpha", flags->alphas, "Marginal width (repeatable)");
  cmd->add_option("--runs", flags->runs, "Runs per sweep point");
  cmd->add_option("--budget-weighting", flags->weighting,
                  "inverse-cif (default) or proportional-cif");
  cmd->add_flag("--emit-timing", flags->emit_timing,
                "Include wall-clock timing in the report");
}

bool flag_given(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* option = cmd->get_option_no_throw(name);
  return option != nullptr && option->count() > 0;
}

dp2pub::PipelineConfig resolve_config(const CLI::App* cmd,
                                      const CommonFlags& flags,
                                      bool scalar_epsilon = true) {
  dp2pub::PipelineConfig config;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) {
      throw DataError("missing config file: " + flags.config_path);
    }
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("invalid config JSON: " + std::string(e.what()));
    }
    config = dp2pub::PipelineConfig::from_json(doc);
  }
  if (flag_given(cmd, "--mode")) {
    config.mode = dp2pub::mode_from_string(flags.mode);
  }
  if (scalar_epsilon && flag_given(cmd, "--epsilon")) {
    config.epsilon = flags.epsilon;
  }
  if (flag_given(cmd, "--split")) config.split = flags.split;
  if (flag_given(cmd, "--degree")) config.degree = flags.degree;
  if (flag_given(cmd, "--seed")) config.seed = flags.seed;
  if (flag_given(cmd, "--alpha")) config.alphas = flags.alphas;
  if (flag_given(cmd, "--runs")) config.runs = flags.runs;
  if (flag_given(cmd, "--budget-weighting")) {
    config.weighting = dp2pub::weighting_from_string(flags.weighting);
  }
  if (flag_given(cmd, "--emit-timing")) config.emit_timing = true;
  if (flag_given(cmd, "--input")) config.input = flags.input;
  if (flag_given(cmd, "--output")) config.output = flags.output;
  if (flag_given(cmd, "--report")) config.report = flags.report;
  config.validate();
  return config;
}

dp2pub::EncodedDataset load_input(const std::string& path,
                                  const std::string& schema_path) {
  if (path.empty()) {
    throw UsageError("--input is required");
  }
  std::optional<dp2pub::AttributeSchema> schema;
  if (!schema_path.empty()) {
    schema = dp2pub::load_schema(schema_path);
  }
  return dp2pub::load_csv(path, schema);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open for writing: " + path);
  }
  out << text;
  if (!out) {
    throw DataError("write failed: " + path);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Differentially private publication of categorical tables"};
  app.require_subcommand(1);

  CommonFlags publish_flags;
  CLI::App* publish_cmd =
      app.add_subcommand("publish", "Publish one perturbed dataset");
  add_common_options(publish_cmd, &publish_flags);
  publish_cmd->add_option("--output", publish_flags.output,
                          "Published CSV path");
  publish_cmd->add_option("--report", publish_flags.report,
                          "Report JSON path (default: <output>.report.json)");

  CommonFlags sweep_flags;
  std::vector<double> sweep_epsilons;
  std::string sweep_csv;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Mean marginal error across a budget grid");
  add_common_options(sweep_cmd, &sweep_flags, /*scalar_epsilon=*/false);
  sweep_cmd->add_option("--epsilon", sweep_epsilons,
                        "Budget grid to sweep (repeatable)");
  sweep_cmd->add_option("--output", sweep_flags.output,
                        "Sweep report JSON path (default: stdout)");
  sweep_cmd->add_option("--csv", sweep_csv, "Also write a CSV table here");

  CommonFlags network_flags;
  CLI::App* network_cmd = app.add_subcommand(
      "network", "Print the learned attribute network as JSON");
  add_common_options(network_cmd, &network_flags);
  network_cmd->add_option("--output", network_flags.output,
                          "Network JSON path (default: stdout)");

  std::string eval_original;
  std::string eval_published;
  std::string eval_schema;
  std::vector<int> eval_alphas;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "Average alpha-way variation distance of two CSVs");
  eval_cmd->add_option("--original", eval_original, "Original CSV")
      ->required();
  eval_cmd->add_option("--published", eval_published, "Published CSV")
      ->required();
  eval_cmd->add_option("--schema", eval_schema,
                       "Optional schema JSON for both files");
  eval_cmd->add_option("--alpha", eval_alphas,
                       "Marginal width (repeatable; default per schema)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << "ERROR:usage:" << e.what() << "\n";
    std::cerr << app.help() << std::flush;
    return 1;
  }

  if (publish_cmd->parsed()) {
    const dp2pub::PipelineConfig config =
        resolve_config(publish_cmd, publish_flags);
    if (config.output.empty()) {
      throw UsageError("--output is required");
    }
    const dp2pub::EncodedDataset data =
        load_input(config.input, publish_flags.schema_path);
    const auto [published, report] = dp2pub::publish(data, config);
    dp2pub::write_csv(published, config.output);
    const std::string report_path =
        config.report.empty() ? config.output + ".report.json"
                              : config.report;
    write_text(report_path,
               report.to_json(data.schema()).dump(2) + "\n");
  } else if (sweep_cmd->parsed()) {
    const dp2pub::PipelineConfig config =
        resolve_config(sweep_cmd, sweep_flags, /*scalar_epsilon=*/false);
    if (sweep_epsilons.empty()) {
      throw UsageError("sweep needs at least one --epsilon");
    }
    const dp2pub::EncodedDataset data =
        load_input(config.input, sweep_flags.schema_path);
    const dp2pub::SweepReport report =
        dp2pub::run_sweep(data, config, sweep_epsilons);
    const std::string json = report.to_json().dump(2) + "\n";
    if (config.output.empty()) {
      std::cout << json;
    } else {
      write_text(config.output, json);
    }
    if (!sweep_csv.empty()) {
      write_text(sweep_csv, report.to_csv());
    }
  } else if (network_cmd->parsed()) {
    const dp2pub::PipelineConfig config =
        resolve_config(network_cmd, network_flags);
    const dp2pub::EncodedDataset data =
        load_input(config.input, network_flags.schema_path);
    dp2pub::BayesianNetwork network = [&] {
      if (config.mode == dp2pub::Mode::kTrusted) {
        dp2pub::RngStream rng(
            dp2pub::mix_seed(config.seed, dp2pub::stage::kNetwork));
        return dp2pub::build_dp_network(
            data, config.degree, config.split * config.epsilon, rng);
      }
      return dp2pub::build_greedy_network(data, config.degree);
    }();
    const std::string json = network.to_json(data.schema()).dump(2) + "\n";
    if (config.output.empty()) {
      std::cout << json;
    } else {
      write_text(config.output, json);
    }
  } else if (eval_cmd->parsed()) {
    const dp2pub::EncodedDataset original =
        load_input(eval_original, eval_schema);
    // The published file shares the original's schema; a perturbed column
    // may have collapsed to fewer values, so inference would misread it.
    const dp2pub::EncodedDataset published =
        dp2pub::load_csv(eval_published, original.schema());
    std::vector<int> alphas = eval_alphas.empty()
                                  ? dp2pub::default_alphas(original.schema())
                                  : eval_alphas;
    nlohmann::json result;
    for (int alpha : alphas) {
      const dp2pub::AlphaWayStats stats =
          dp2pub::alpha_way_stats(original, published, alpha);
      const std::string key = std::to_string(alpha);
      result["alpha_way_avd"][key] = stats.mean;
      result["subsets_evaluated"][key] = stats.subsets_evaluated;
      result["sampled"][key] = stats.sampled;
    }
    std::cout << result.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "ERROR:usage:" << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "ERROR:data:" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ERROR:internal:" << e.what() << "\n";
    return 2;
  }
}
