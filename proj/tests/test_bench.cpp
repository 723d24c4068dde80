#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "submax/bench.hpp"
#include "submax/errors.hpp"

using namespace submax;

namespace {

InstanceSpec small_instance() {
  GenSpec gen;
  gen.family = "random-coverage";
  gen.n = 12;
  gen.seed = 19;
  gen.k = 2;
  gen.blocks = 3;
  gen.capacity = 1;
  gen.universe = 20;
  gen.density = 0.2;
  gen.name = "bench-fixture";
  return generate_instance(gen);
}

// Everything except the trailing elapsed_ms column.
std::string strip_timing(const std::string& row) {
  return row.substr(0, row.rfind(','));
}

}  // namespace

TEST_CASE("the CSV header is fixed") {
  CHECK(csv_header() ==
        "instance,algorithm,p,epsilon,seed,value,opt,ratio,oracle_calls,"
        "rounds,sample_size,elapsed_ms");
}

TEST_CASE("rows leave unknown optional fields empty") {
  ResultRow row;
  row.instance = "x";
  row.algorithm = "greedy";
  row.seed = 3;
  row.value = 1.5;
  row.oracle_calls = 7;
  row.rounds = 2;
  row.sample_size = 4;
  row.elapsed_ms = 0.25;
  CHECK(to_csv(row) == "x,greedy,,,3,1.5,,,7,2,4,0.25");
}

TEST_CASE("doubles format without locale or precision loss") {
  CHECK(format_double(0.05) == "0.05");
  CHECK(format_double(17.0) == "17");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("sweeps expand per algorithm and count rows exactly") {
  const InstanceSpec inst = small_instance();
  ExperimentConfig config;
  config.algorithms = {Algorithm::sdtga, Algorithm::sample_greedy};
  config.p_values = {1.0 / 3.0};
  config.epsilon_values = {0.05, 0.1};
  config.trials = 500;
  config.master_seed = 99;
  const ExperimentOutput output = run_experiment(inst, config);
  // sdtga spans p x epsilon (1000 rows), sample_greedy spans p (500).
  CHECK(output.rows.size() == 1500);
  CHECK(output.summaries.size() == 3);

  int sdtga_rows = 0;
  for (const ResultRow& row : output.rows) {
    if (row.algorithm == "sdtga") {
      ++sdtga_rows;
      REQUIRE(row.epsilon.has_value());
    } else {
      CHECK(!row.epsilon.has_value());
    }
    REQUIRE(row.opt.has_value());
    REQUIRE(row.ratio.has_value());
    CHECK(*row.ratio >= 0.0);
    CHECK(*row.ratio <= 1.0 + 1e-9);
  }
  CHECK(sdtga_rows == 1000);
}

TEST_CASE("experiments reject invalid sweep pairs") {
  const InstanceSpec inst = small_instance();
  ExperimentConfig config;
  config.algorithms = {Algorithm::sdtga};
  config.p_values = {0.2};
  config.epsilon_values = {0.3};
  config.trials = 1;
  CHECK_THROWS_WITH_AS(run_experiment(inst, config),
                       doctest::Contains("epsilon must be < p"), ConfigError);
}

TEST_CASE("identical seeds reproduce every data row byte for byte") {
  const InstanceSpec inst = small_instance();
  ExperimentConfig config;
  config.algorithms = {Algorithm::sdtga, Algorithm::greedy};
  config.p_values = {1.0 / 3.0};
  config.epsilon_values = {0.1};
  config.trials = 40;
  config.master_seed = 2024;

  const ExperimentOutput first = run_experiment(inst, config);
  config.threads = 2;  // parallelism must not leak into the rows
  const ExperimentOutput second = run_experiment(inst, config);
  REQUIRE(first.rows.size() == second.rows.size());
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    CHECK(strip_timing(to_csv(first.rows[i])) ==
          strip_timing(to_csv(second.rows[i])));
  }
  CHECK(first.summaries == second.summaries);
}

TEST_CASE("csv output carries header, rows, and summary comments") {
  const InstanceSpec inst = small_instance();
  ExperimentConfig config;
  config.algorithms = {Algorithm::greedy};
  config.trials = 2;
  const ExperimentOutput output = run_experiment(inst, config);
  std::ostringstream stream;
  write_csv(stream, output);
  const std::string text = stream.str();
  CHECK(text.find(csv_header()) == 0);
  CHECK(text.find("# summary instance=bench-fixture algorithm=greedy") !=
        std::string::npos);
}

TEST_CASE("opt stays empty when brute force is out of reach") {
  GenSpec gen;
  gen.family = "random-modular";
  gen.n = 24;
  gen.seed = 77;
  gen.k = 1;
  gen.blocks = 4;
  const InstanceSpec inst = generate_instance(gen);
  ExperimentConfig config;
  config.algorithms = {Algorithm::greedy};
  config.trials = 1;
  const ExperimentOutput output = run_experiment(inst, config);
  REQUIRE(output.rows.size() == 1);
  CHECK(!output.rows.front().opt.has_value());
  CHECK(!output.rows.front().ratio.has_value());
  const std::string row = to_csv(output.rows.front());
  CHECK(row.find(",,,") != std::string::npos);  // empty opt and ratio columns
}

TEST_CASE("the built-in corpus passes the full verification sweep") {
  const VerificationOutcome outcome = verify_corpus(true, 7);
  for (const std::string& line : outcome.lines) {
    CAPTURE(line);
    CHECK(line.find("[FAIL]") == std::string::npos);
  }
  CHECK(outcome.passed);
}
