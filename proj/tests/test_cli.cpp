#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "dp2pub/evaluate.hpp"
#include "test_support.hpp"

using testsupport::TempDir;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const TempDir& dir, const std::string& args) {
  const auto out_path = dir.file("stdout.txt");
  const auto err_path = dir.file("stderr.txt");
  const std::string command = std::string(DP2PUB_CLI_PATH) + " " + args +
                              " > " + out_path.string() + " 2> " +
                              err_path.string();
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = testsupport::read_file(out_path);
  result.err = testsupport::read_file(err_path);
  return result;
}

std::filesystem::path write_sample_csv(const TempDir& dir) {
  const auto path = dir.file("data.csv");
  dp2pub::RngStream rng(2718);
  std::string text = "age,smoker,risk\n";
  const char* ages[] = {"young", "mid", "old"};
  for (int i = 0; i < 300; ++i) {
    const int age = rng.next_int(3);
    const int smoker = rng.next_int(2);
    const int risk = smoker == 1 && rng.next_double() < 0.8 ? 1 : 0;
    text += std::string(ages[age]) + "," + (smoker ? "yes" : "no") + "," +
            (risk ? "high" : "low") + "\n";
  }
  testsupport::write_file(path, text);
  return path;
}

}  // namespace

TEST_CASE("publish writes the dataset and its report") {
  TempDir dir;
  const auto input = write_sample_csv(dir);
  const auto output = dir.file("published.csv");

  const CliResult result = run_cli(
      dir, "publish --input " + input.string() + " --output " +
               output.string() +
               " --epsilon 1.0 --mode trusted --seed 7");
  CHECK(result.exit_code == 0);
  REQUIRE(std::filesystem::exists(output));
  REQUIRE(std::filesystem::exists(output.string() + ".report.json"));

  const nlohmann::json report = nlohmann::json::parse(
      testsupport::read_file(output.string() + ".report.json"));
  CHECK(report["mode"] == "trusted");
  CHECK(report["rows"] == 300);
  CHECK(report["budget"]["epsilon"] == 1.0);

  // Published file keeps the header and row count; load it under the
  // original schema since perturbed columns may collapse to fewer values.
  const dp2pub::EncodedDataset original = dp2pub::load_csv(input);
  const dp2pub::EncodedDataset published =
      dp2pub::load_csv(output, original.schema());
  CHECK(published.record_count() == 300);
  CHECK(published.schema().name(0) == "age");
}

TEST_CASE("publish is byte-deterministic per seed") {
  TempDir dir;
  const auto input = write_sample_csv(dir);
  for (const std::string mode : {"trusted", "local"}) {
    const auto out_a = dir.file("a_" + mode + ".csv");
    const auto out_b = dir.file("b_" + mode + ".csv");
    const std::string common = "publish --input " + input.string() +
                               " --epsilon 0.8 --mode " + mode +
                               " --seed 4242 --output ";
    CHECK(run_cli(dir, common + out_a.string()).exit_code == 0);
    CHECK(run_cli(dir, common + out_b.string()).exit_code == 0);
    CHECK(testsupport::read_file(out_a) == testsupport::read_file(out_b));
    CHECK(testsupport::read_file(out_a.string() + ".report.json") ==
          testsupport::read_file(out_b.string() + ".report.json"));
  }
}

TEST_CASE("unknown flags exit 1 with usage text") {
  TempDir dir;
  const CliResult result = run_cli(dir, "publish --frobnicate 3");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("ERROR:usage:") != std::string::npos);
  CHECK(result.err.find("Usage") != std::string::npos);
}

TEST_CASE("missing input exits 2 with a data error") {
  TempDir dir;
  const CliResult result = run_cli(
      dir, "publish --input /nonexistent.csv --output " +
               dir.file("x.csv").string() + " --epsilon 1 --seed 1");
  CHECK(result.exit_code == 2);
  CHECK(result.err.rfind("ERROR:data:", 0) == 0);
}

TEST_CASE("invalid budget exits 1 as a usage error") {
  TempDir dir;
  const auto input = write_sample_csv(dir);
  const CliResult result = run_cli(
      dir, "publish --input " + input.string() + " --output " +
               dir.file("y.csv").string() + " --epsilon -1 --seed 1");
  CHECK(result.exit_code == 1);
  CHECK(result.err.rfind("ERROR:usage:", 0) == 0);
}

TEST_CASE("evaluate matches the library computation") {
  TempDir dir;
  const auto input = write_sample_csv(dir);
  const auto output = dir.file("published.csv");
  CHECK(run_cli(dir, "publish --input " + input.string() + " --output " +
                         output.string() +
                         " --epsilon 2.0 --mode trusted --seed 11")
            .exit_code == 0);

  const CliResult result = run_cli(
      dir, "evaluate --original " + input.string() + " --published " +
               output.string() + " --alpha 2");
  CHECK(result.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(result.out);
  const double reported = doc["alpha_way_avd"]["2"].get<double>();

  const dp2pub::EncodedDataset original = dp2pub::load_csv(input);
  const dp2pub::EncodedDataset published =
      dp2pub::load_csv(output, original.schema());
  CHECK(reported ==
        doctest::Approx(dp2pub::alpha_way_avg(original, published, 2))
            .epsilon(1e-12));
}

TEST_CASE("network subcommand emits the construction-order JSON") {
  TempDir dir;
  const auto input = write_sample_csv(dir);
  const CliResult result = run_cli(
      dir, "network --input " + input.string() +
               " --mode local --degree 2");
  CHECK(result.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(result.out);
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["parents"].empty());
  for (const auto& pair : doc) {
    CHECK(pair.contains("attribute"));
    CHECK(pair.contains("parents"));
  }
}

TEST_CASE("sweep emits JSON and CSV tables") {
  TempDir dir;
  const auto input = write_sample_csv(dir);
  const auto json_path = dir.file("sweep.json");
  const auto csv_path = dir.file("sweep.csv");
  const CliResult result = run_cli(
      dir, "sweep --input " + input.string() + " --epsilon 0.5 --epsilon 4" +
               " --runs 2 --alpha 2 --seed 3 --mode trusted --output " +
               json_path.string() + " --csv " + csv_path.string());
  CHECK(result.exit_code == 0);
  const nlohmann::json doc =
      nlohmann::json::parse(testsupport::read_file(json_path));
  CHECK(doc["runs"] == 2);
  CHECK(doc["cells"].size() == 2);
  const std::string csv = testsupport::read_file(csv_path);
  CHECK(csv.rfind("epsilon,alpha,mean,sd\n", 0) == 0);
}

TEST_CASE("config file values are overridden by flags") {
  TempDir dir;
  const auto input = write_sample_csv(dir);
  const auto config_path = dir.file("config.json");
  testsupport::write_file(config_path, R"({
    "mode": "trusted",
    "epsilon": 1.0,
    "seed": 5,
    "degree": 1
  })");
  const auto output = dir.file("out.csv");
  const CliResult result = run_cli(
      dir, "publish --config " + config_path.string() + " --input " +
               input.string() + " --output " + output.string() +
               " --epsilon 2.5");
  CHECK(result.exit_code == 0);
  const nlohmann::json report = nlohmann::json::parse(
      testsupport::read_file(output.string() + ".report.json"));
  CHECK(report["budget"]["epsilon"] == 2.5);  // flag wins
  CHECK(report["config"]["seed"] == 5);       // file value survives
  CHECK(report["config"]["degree"] == 1);
}

TEST_CASE("schema files extend the visible domain") {
  TempDir dir;
  const auto input = dir.file("small.csv");
  testsupport::write_file(input, "c,d\na,x\nb,x\na,y\n");
  const auto schema_path = dir.file("schema.json");
  testsupport::write_file(schema_path,
                          R"({"attributes":[
    {"name":"c","categories":["a","b","z"]},
    {"name":"d","categories":["x","y"]}]})");
  const CliResult result = run_cli(
      dir, "network --input " + input.string() + " --schema " +
               schema_path.string() + " --mode local");
  CHECK(result.exit_code == 0);
}
