#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submax/constraints.hpp"
#include "submax/element_set.hpp"
#include "submax/objectives.hpp"
#include "submax/rng.hpp"

namespace submax {

// Run parameters for the sample decreasing-threshold greedy solver.
// Valid runs need 0 < epsilon < p <= 1. The harness fills p = 1/(1+k)
// when unset, the setting with the best approximation ratios; values
// above it are refused unless allow_p_above_optimal is set since they
// only cost evaluations and weaken the non-monotone guarantee.
struct SolverConfig {
  double p = 0.5;
  double epsilon = 0.1;
  std::optional<int> r_override;  // default: constraint rank upper bound
  std::uint64_t seed = 0;
  bool allow_p_above_optimal = false;
  bool record_trace = true;
};

enum class RemovalReason { infeasible, negligible, added };
std::string to_string(RemovalReason reason);

struct SolverTrace {
  double d = 0.0;  // initial threshold anchor: best sampled singleton
  std::vector<double> theta_sequence;
  struct Addition {
    int round = 0;
    int element = 0;
    double marginal = 0.0;
  };
  struct Removal {
    int round = 0;
    int element = 0;
    RemovalReason reason = RemovalReason::infeasible;
  };
  std::vector<Addition> additions;
  std::vector<Removal> removals;
};

struct SolverResult {
  ElementSet solution;
  double value = 0.0;
  std::int64_t oracle_calls = 0;
  int rounds = 0;       // outer threshold-loop iterations executed
  int sample_size = 0;  // |R| after sampling
  double elapsed_ms = 0.0;
  std::optional<SolverTrace> trace;
};

// Number of threshold levels from d down to (epsilon/r)*d under the
// multiplicative (1-epsilon) schedule: ceil(ln(r/eps) / ln(1/(1-eps))).
int max_rounds(double epsilon, int r);

// Sample decreasing-threshold greedy. Samples each element with
// probability cfg.p, anchors the threshold at the best sampled
// singleton, then sweeps the surviving sample per threshold level,
// adding elements whose marginal clears the level and permanently
// discarding infeasible or negligible ones.
SolverResult sdtga(const ValueOracle& f, const IndependenceSystem& sys,
                   const SolverConfig& cfg);

// Classic greedy: repeatedly add the feasible element of maximum
// positive marginal gain, smallest id on ties. Deterministic, O(nr)
// oracle calls.
SolverResult greedy(const ValueOracle& f, const IndependenceSystem& sys);

// Greedy restricted to a Bernoulli(p) sample of the ground set.
SolverResult sample_greedy(const ValueOracle& f, const IndependenceSystem& sys,
                           double p, Rng& rng);

// Exact optimum by enumerating independent sets with downward-closure
// pruning; refuses n > 20. Ties prefer the smaller solution, then the
// lexicographically smaller element list.
SolverResult brute_force_opt(const ValueOracle& f,
                             const IndependenceSystem& sys);

struct StatReport {
  std::int64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool passed = false;  // mean - 3*std_error >= bound
};

StatReport make_stat_report(const std::vector<double>& samples, double bound);

// Monte-Carlo check of the random-subset lemma: for submodular
// non-negative h and S sampled elementwise with probability p,
// E[h(S)] >= (1-p) * h(∅). Requires trials >= 100.
StatReport claim1_check(const ValueOracle& h, double p, std::int64_t trials,
                        Rng& rng);

enum class Algorithm { sdtga, greedy, sample_greedy, brute_force };

std::string to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(const std::string& name);
bool uses_p(Algorithm algorithm);
bool uses_epsilon(Algorithm algorithm);

// One run of the named algorithm; cfg.seed drives any sampling.
SolverResult run_algorithm(Algorithm algorithm, const ValueOracle& f,
                           const IndependenceSystem& sys,
                           const SolverConfig& cfg);

struct TrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  std::optional<double> ratio;
  std::int64_t oracle_calls = 0;
  int rounds = 0;
  int sample_size = 0;
  double elapsed_ms = 0.0;
};

struct TrialsReport {
  std::vector<TrialRow> rows;
  std::optional<double> opt;
  double mean_value = 0.0;
  double se_value = 0.0;
  std::optional<double> mean_ratio;
  std::optional<double> se_ratio;
  double mean_oracle_calls = 0.0;
  double mean_rounds = 0.0;

  StatReport value_stat(double bound) const;
  StatReport ratio_stat(double bound) const;  // requires opt > 0
};

// Independent seeded trials; trial i draws from the sub-seed
// derive_seed(master_seed, i), so any row is reproducible on its own.
// Trials may run on several threads (0 = resolve from SUBMAX_THREADS or
// hardware); results are ordered by trial index regardless of schedule.
TrialsReport run_trials(Algorithm algorithm, const ValueOracle& f,
                        const IndependenceSystem& sys,
                        const SolverConfig& base_cfg, int trials,
                        std::uint64_t master_seed, std::optional<double> opt,
                        int threads = 0);

int resolve_threads(int requested);

}  // namespace submax
