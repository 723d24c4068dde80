// Command-line harness: instance generation and loading, solver runs,
// benchmark sweeps with CSV output, and the verification suite.
//
// Exit codes: 0 success, 1 bad configuration, 2 bad instance,
// 3 capacity refusal (exhaustive operation on an oversized ground set),
// 4 verification failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "submax/bench.hpp"
#include "submax/errors.hpp"
#include "submax/instance.hpp"
#include "submax/solvers.hpp"

namespace {

using namespace submax;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInstance = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitVerification = 4;

Algorithm algorithm_from_flag(const std::string& name) {
  const auto parsed = parse_algorithm(name);
  if (!parsed) {
    throw ConfigError("unknown algorithm \"" + name +
                      "\" (expected sdtga, greedy, sample_greedy, or "
                      "brute_force)");
  }
  return *parsed;
}

// p defaults to 1/(1+k), the setting with the best approximation ratio;
// epsilon defaults to p/2 to stay inside (0, p).
void fill_parameter_defaults(ExperimentConfig& config, Algorithm algorithm,
                             const IndependenceSystem& sys) {
  if (uses_p(algorithm) && config.p_values.empty()) {
    config.p_values = {1.0 / (1.0 + sys.extendibility())};
  }
  if (uses_epsilon(algorithm) && config.epsilon_values.empty()) {
    const double smallest_p =
        *std::min_element(config.p_values.begin(), config.p_values.end());
    config.epsilon_values = {smallest_p / 2.0};
  }
}

void append_rows(const std::filesystem::path& path,
                 const std::vector<ResultRow>& rows) {
  const bool fresh =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  if (fresh) out << csv_header() << '\n';
  for (const ResultRow& row : rows) out << to_csv(row) << '\n';
}

struct RunOptions {
  std::string instance_path;
  std::string algorithm = "sdtga";
  double p = -1.0;
  double epsilon = -1.0;
  int r = 0;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string output;
  bool allow_large_p = false;
};

int run_command(const RunOptions& options) {
  const InstanceSpec instance = load_instance(options.instance_path);
  const Algorithm algorithm = algorithm_from_flag(options.algorithm);

  ExperimentConfig config;
  config.algorithms = {algorithm};
  if (options.p > 0.0) config.p_values = {options.p};
  if (options.epsilon > 0.0) config.epsilon_values = {options.epsilon};
  config.trials = options.trials;
  config.master_seed = options.seed;
  if (options.r > 0) config.r_override = options.r;
  config.allow_p_above_optimal = options.allow_large_p;
  fill_parameter_defaults(config, algorithm, *instance.build_system());

  const ExperimentOutput output = run_experiment(instance, config);
  if (!options.output.empty()) {
    append_rows(options.output, output.rows);
  } else {
    std::cout << csv_header() << '\n';
    for (const ResultRow& row : output.rows) std::cout << to_csv(row) << '\n';
  }
  for (const std::string& summary : output.summaries) {
    std::cout << "# " << summary << '\n';
  }
  return kExitOk;
}

struct BenchOptions {
  std::string instance_path;
  std::vector<std::string> algorithms = {"sdtga", "sample_greedy", "greedy"};
  std::vector<double> p_values;
  std::vector<double> epsilon_values;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string output;
  int r = 0;
  bool allow_large_p = false;
};

int bench_command(const BenchOptions& options) {
  const InstanceSpec instance = load_instance(options.instance_path);
  ExperimentConfig config;
  for (const std::string& name : options.algorithms) {
    config.algorithms.push_back(algorithm_from_flag(name));
  }
  config.p_values = options.p_values;
  config.epsilon_values = options.epsilon_values;
  config.trials = options.trials;
  config.master_seed = options.seed;
  if (options.r > 0) config.r_override = options.r;
  config.allow_p_above_optimal = options.allow_large_p;
  const auto system = instance.build_system();
  for (const Algorithm algorithm : config.algorithms) {
    fill_parameter_defaults(config, algorithm, *system);
  }

  const ExperimentOutput output = run_experiment(instance, config);
  std::ofstream out(options.output, std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot open output file: " + options.output);
  }
  write_csv(out, output);
  std::cout << "wrote " << output.rows.size() << " rows to " << options.output
            << '\n';
  return kExitOk;
}

struct GenOptions {
  GenSpec spec;
  std::string output;
};

int gen_command(const GenOptions& options) {
  const InstanceSpec instance = generate_instance(options.spec);
  write_instance(instance, options.output);
  std::cout << "wrote instance " << instance.name << " (n=" << instance.n
            << ") to " << options.output << '\n';
  return kExitOk;
}

struct VerifyOptions {
  std::string instance_path;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::vector<std::string> plants;
};

// Known-bad fixtures, reachable only through --plant, for exercising the
// failure paths end to end. Including any plant fails the run.
void run_plants(const std::vector<std::string>& plants,
                VerificationOutcome& outcome) {
  for (const std::string& plant : plants) {
    if (plant == "supermodular") {
      // f(S) = |S|^2 violates diminishing returns.
      class SquaredCardinality final : public ValueOracle {
       public:
        int ground_size() const override { return 4; }
        bool monotone_hint() const override { return true; }
        std::string kind() const override { return "plant-supermodular"; }
        std::unique_ptr<ValueOracle> clone() const override {
          return std::make_unique<SquaredCardinality>();
        }

       protected:
        double value_of(const ElementSet& s) const override {
          return static_cast<double>(s.size()) *
                 static_cast<double>(s.size());
        }
      };
      const SquaredCardinality f;
      const PropertyReport report = verify_submodularity_exhaustive(f);
      outcome.lines.push_back(
          report.passed ? "[FAIL] plant supermodular: went undetected"
                        : "[ok]   plant supermodular: rejected with witness " +
                              report.witness->to_string());
      outcome.passed = false;
    } else if (plant == "bad-k") {
      // Two crossing partition matroids are 2- but not 1-extendible.
      auto m1 = std::make_shared<PartitionMatroid>(
          3, std::vector<PartitionMatroid::Block>{{{0, 1}, 1}, {{2}, 1}});
      auto m2 = std::make_shared<PartitionMatroid>(
          3, std::vector<PartitionMatroid::Block>{{{0, 2}, 1}, {{1}, 1}});
      const auto crossing = intersect({m1, m2});
      const AxiomReport report = verify_k_extendible(*crossing, 1);
      outcome.lines.push_back(
          report.passed ? "[FAIL] plant bad-k: went undetected"
                        : "[ok]   plant bad-k: rejected with witness " +
                              report.counterexample->to_string());
      outcome.passed = false;
    } else {
      throw ConfigError("unknown plant \"" + plant +
                        "\" (expected supermodular or bad-k)");
    }
  }
}

int verify_command(const VerifyOptions& options) {
  VerificationOutcome outcome;
  if (!options.instance_path.empty()) {
    const InstanceSpec instance = load_instance(options.instance_path);
    outcome =
        verify_instance_suite(instance, options.exhaustive, options.seed);
  } else {
    outcome = verify_corpus(options.exhaustive, options.seed);
  }
  run_plants(options.plants, outcome);
  for (const std::string& line : outcome.lines) std::cout << line << '\n';
  if (!outcome.passed) {
    std::cout << "verification FAILED" << '\n';
    return kExitVerification;
  }
  std::cout << "verification passed (" << outcome.lines.size() << " checks)"
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"submodular maximization under k-extendible constraints: "
               "solvers, baselines, and verification"};
  app.require_subcommand(1);

  RunOptions run_options;
  CLI::App* run = app.add_subcommand(
      "run", "run one algorithm on one instance for N seeded trials");
  run->add_option("--instance", run_options.instance_path, "instance JSON")
      ->required();
  run->add_option("--algorithm", run_options.algorithm,
                  "sdtga | greedy | sample_greedy | brute_force")
      ->required();
  run->add_option("--p", run_options.p,
                  "sampling probability (default 1/(1+k))");
  run->add_option("--epsilon", run_options.epsilon,
                  "threshold decay, in (0, p) (default p/2)");
  run->add_option("--r", run_options.r, "override the solution-size bound");
  run->add_option("--trials", run_options.trials, "seeded trials (default 1)");
  run->add_option("--seed", run_options.seed, "master seed");
  run->add_option("--output", run_options.output,
                  "CSV to append rows to (stdout when omitted)");
  run->add_flag("--allow-large-p", run_options.allow_large_p,
                "permit p above 1/(1+k) for diagnostics");

  BenchOptions bench_options;
  CLI::App* bench = app.add_subcommand(
      "bench", "sweep algorithms x p x epsilon x trials into a CSV");
  bench->add_option("--instance", bench_options.instance_path, "instance JSON")
      ->required();
  bench->add_option("--algorithms", bench_options.algorithms,
                    "subset of sdtga,sample_greedy,greedy,brute_force")
      ->delimiter(',');
  bench->add_option("--p-values", bench_options.p_values, "p grid")
      ->delimiter(',');
  bench->add_option("--epsilon-values", bench_options.epsilon_values,
                    "epsilon grid")
      ->delimiter(',');
  bench->add_option("--trials", bench_options.trials,
                    "trials per sweep point (default 100)");
  bench->add_option("--seed", bench_options.seed, "master seed");
  bench->add_option("--output", bench_options.output, "CSV path")->required();
  bench->add_option("--r", bench_options.r,
                    "override the solution-size bound");
  bench->add_flag("--allow-large-p", bench_options.allow_large_p,
                  "permit p above 1/(1+k) for diagnostics");

  GenOptions gen_options;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic instance");
  gen->add_option("--family", gen_options.spec.family,
                  "random-modular | random-coverage | "
                  "random-facility-location | random-cut")
      ->required();
  gen->add_option("--n", gen_options.spec.n, "ground-set size")->required();
  gen->add_option("--seed", gen_options.spec.seed, "generator seed");
  gen->add_option("--k", gen_options.spec.k,
                  "number of intersected partition matroids (default 2)");
  gen->add_option("--blocks", gen_options.spec.blocks,
                  "blocks per matroid (default max(2, n/4))");
  gen->add_option("--cap", gen_options.spec.capacity,
                  "capacity per block (default 1)");
  gen->add_option("--universe", gen_options.spec.universe,
                  "coverage universe size (default 3n)");
  gen->add_option("--density", gen_options.spec.density,
                  "edge/cover density (default 0.3)");
  gen->add_option("--clients", gen_options.spec.clients,
                  "facility-location clients (default n)");
  gen->add_option("--name", gen_options.spec.name, "instance name");
  gen->add_option("--output", gen_options.output, "instance JSON path")
      ->required();

  VerifyOptions verify_options;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the definition checkers over the built-in corpus");
  verify->add_option("--instance", verify_options.instance_path,
                     "verify this instance instead of the corpus");
  verify->add_flag("--exhaustive", verify_options.exhaustive,
                   "force exhaustive checks (refuses oversized ground sets)");
  verify->add_option("--seed", verify_options.seed,
                     "seed for randomized checks");
  verify->add_option("--plant", verify_options.plants,
                     "include a known-bad fixture: supermodular | bad-k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return run_command(run_options);
    if (bench->parsed()) return bench_command(bench_options);
    if (gen->parsed()) return gen_command(gen_options);
    if (verify->parsed()) return verify_command(verify_options);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "instance error: " << e.what() << '\n';
    return kExitInstance;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  }
  return kExitOk;
}
