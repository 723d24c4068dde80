#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "submax/instance.hpp"
#include "submax/solvers.hpp"

namespace submax {

struct ExperimentConfig {
  std::vector<Algorithm> algorithms;
  std::vector<double> p_values;
  std::vector<double> epsilon_values;
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::optional<int> r_override;
  bool allow_p_above_optimal = false;
  int threads = 0;  // 0: SUBMAX_THREADS or hardware parallelism
};

// One line of the output CSV. Data rows are byte-identical across runs
// with the same instance, config, and master seed; elapsed_ms is the
// only column excluded from that contract.
struct ResultRow {
  std::string instance;
  std::string algorithm;
  std::optional<double> p;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  double value = 0.0;
  std::optional<double> opt;
  std::optional<double> ratio;
  std::int64_t oracle_calls = 0;
  int rounds = 0;
  int sample_size = 0;
  double elapsed_ms = 0.0;
};

// Shortest round-trip formatting, locale-independent.
std::string format_double(double x);

std::string csv_header();
std::string to_csv(const ResultRow& row);

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  std::vector<std::string> summaries;  // emitted as '#' comment lines
};

// Full sweep: sdtga spans p x epsilon, sample_greedy spans p, greedy and
// brute_force run once each; every point runs `trials` seeded trials.
ExperimentOutput run_experiment(const InstanceSpec& instance,
                                const ExperimentConfig& config);

void write_csv(std::ostream& out, const ExperimentOutput& output);

// The exact optimum used for ratio columns: the instance's recorded
// value if present, otherwise brute force when n <= 20, otherwise
// nothing (the opt column stays empty rather than guessing).
std::optional<double> resolve_opt(const InstanceSpec& instance,
                                  const ValueOracle& f,
                                  const IndependenceSystem& sys);

struct VerificationOutcome {
  bool passed = true;
  std::vector<std::string> lines;
};

// Definition checkers (matroid axioms, k-extendibility, submodularity,
// normalization and non-negativity, monotonicity for kinds that declare
// it) plus the random-subset lemma on non-monotone objectives.
VerificationOutcome verify_instance_suite(const InstanceSpec& instance,
                                          bool exhaustive,
                                          std::uint64_t seed);
VerificationOutcome verify_corpus(bool exhaustive, std::uint64_t seed);

}  // namespace submax
