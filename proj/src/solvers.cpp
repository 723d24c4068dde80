#include "submax/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "submax/errors.hpp"

namespace submax {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

int effective_rank_bound(const IndependenceSystem& sys,
                         const SolverConfig& cfg) {
  if (cfg.r_override) {
    if (*cfg.r_override < 1) {
      throw ConfigError("r must be >= 1, got " +
                        std::to_string(*cfg.r_override));
    }
    return *cfg.r_override;
  }
  // Rank-0 systems admit only the empty set; clamping keeps the
  // threshold schedule well defined and the run still returns ∅.
  return std::max(1, sys.rank_upper_bound());
}

void validate_config(const SolverConfig& cfg, int k) {
  if (!(cfg.p > 0.0 && cfg.p <= 1.0)) {
    throw ConfigError("p must be in (0, 1], got " + std::to_string(cfg.p));
  }
  const double p_star = 1.0 / (1.0 + k);
  if (!cfg.allow_p_above_optimal && cfg.p > p_star + 1e-12) {
    throw ConfigError(
        "p=" + std::to_string(cfg.p) + " exceeds 1/(1+k)=" +
        std::to_string(p_star) +
        ", which only costs evaluations without improving the guarantee; "
        "set allow_p_above_optimal for diagnostic runs");
  }
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < cfg.p)) {
    throw ConfigError("epsilon must be < p and positive, got epsilon=" +
                      std::to_string(cfg.epsilon) + ", p=" +
                      std::to_string(cfg.p));
  }
}

void check_same_ground(const ValueOracle& f, const IndependenceSystem& sys) {
  if (f.ground_size() != sys.ground_size()) {
    throw DomainError("objective over " + std::to_string(f.ground_size()) +
                      " elements but constraint over " +
                      std::to_string(sys.ground_size()));
  }
}

void check_feasible_output(const IndependenceSystem& sys,
                           const SolverResult& res) {
  if (!sys.is_independent(res.solution)) {
    throw std::logic_error("solver produced a dependent solution");
  }
}

double recheck_value(const ValueOracle& f, const ElementSet& solution,
                     double accumulated) {
  const double direct = f.eval_uncounted(solution);
  if (std::abs(direct - accumulated) >
      kValueTolerance * std::max(1.0, std::abs(direct))) {
    throw std::logic_error("accumulated solution value drifted from the "
                           "direct evaluation");
  }
  return direct;
}

}  // namespace

std::string to_string(RemovalReason reason) {
  switch (reason) {
    case RemovalReason::infeasible: return "infeasible";
    case RemovalReason::negligible: return "negligible";
    case RemovalReason::added: return "added";
  }
  return "?";
}

int max_rounds(double epsilon, int r) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError("epsilon must be in (0, 1)");
  }
  if (r < 1) throw ConfigError("r must be >= 1");
  return static_cast<int>(
      std::ceil(std::log(static_cast<double>(r) / epsilon) /
                std::log(1.0 / (1.0 - epsilon))));
}

SolverResult sdtga(const ValueOracle& f, const IndependenceSystem& sys,
                   const SolverConfig& cfg) {
  const auto start = Clock::now();
  check_same_ground(f, sys);
  validate_config(cfg, sys.extendibility());
  const int n = f.ground_size();
  const int r = effective_rank_bound(sys, cfg);
  const std::int64_t calls_before = f.call_count();

  SolverResult res;
  res.solution = ElementSet(n);
  SolverTrace trace;

  Rng rng(cfg.seed, 0);
  const ElementSet sample = sample_subset(n, cfg.p, rng);
  res.sample_size = sample.size();

  if (!sample.empty()) {
    auto tracker = f.make_tracker();
    auto feasible = sys.new_state();

    // Threshold anchor: best sampled singleton, |R| evaluations.
    std::vector<int> alive = sample.elements();
    double d = -std::numeric_limits<double>::infinity();
    for (int u : alive) d = std::max(d, tracker->gain(u));
    trace.d = d;

    if (d > 0.0) {
      // A worthless sample (d <= 0) would make the multiplicative
      // schedule never terminate; all its marginals at ∅ are <= 0, so
      // keeping the empty solution is exact.
      const double negligible_floor = (cfg.epsilon / r) * d;
      const int rounds_cap = max_rounds(cfg.epsilon, r);
      double theta = d;
      int round = 0;
      while (theta >= negligible_floor && round < rounds_cap &&
             !alive.empty()) {
        ++round;
        trace.theta_sequence.push_back(theta);
        std::vector<int> next_alive;
        next_alive.reserve(alive.size());
        for (int u : alive) {
          if (!feasible->can_add(u)) {
            trace.removals.push_back({round, u, RemovalReason::infeasible});
            continue;
          }
          const double gain = tracker->gain(u);
          if (gain >= theta) {
            tracker->add(u);
            feasible->add(u);
            trace.additions.push_back({round, u, gain});
            trace.removals.push_back({round, u, RemovalReason::added});
          } else if (gain < negligible_floor) {
            // Negligible now means negligible forever, by diminishing
            // returns; drop the element outright. This also discards
            // every negative marginal of non-monotone objectives.
            trace.removals.push_back({round, u, RemovalReason::negligible});
          } else {
            next_alive.push_back(u);
          }
        }
        alive.swap(next_alive);
        theta *= 1.0 - cfg.epsilon;
      }
      res.rounds = round;
      res.solution = tracker->current();
      res.value = recheck_value(f, res.solution, tracker->current_value());
    }
  }

  res.oracle_calls = f.call_count() - calls_before;
  check_feasible_output(sys, res);
  if (cfg.record_trace) res.trace = std::move(trace);
  res.elapsed_ms = ms_since(start);
  return res;
}

namespace {

// Shared core of greedy and sample_greedy: plain greedy over an
// ascending candidate pool. Candidates that become infeasible are
// dropped permanently (downward closure keeps them infeasible).
SolverResult greedy_over_pool(const ValueOracle& f,
                              const IndependenceSystem& sys,
                              std::vector<int> pool, int sample_size) {
  const auto start = Clock::now();
  const std::int64_t calls_before = f.call_count();
  auto tracker = f.make_tracker();
  auto feasible = sys.new_state();

  int sweeps = 0;
  while (true) {
    ++sweeps;
    int best_element = -1;
    double best_gain = 0.0;  // require strictly positive gain
    std::vector<int> surviving;
    surviving.reserve(pool.size());
    for (int u : pool) {
      if (!feasible->can_add(u)) continue;
      surviving.push_back(u);
      const double gain = tracker->gain(u);
      if (gain > best_gain) {
        best_gain = gain;
        best_element = u;
      }
    }
    pool.swap(surviving);
    if (best_element < 0) break;
    tracker->add(best_element);
    feasible->add(best_element);
    std::erase(pool, best_element);
  }

  SolverResult res;
  res.solution = tracker->current();
  res.value = recheck_value(f, res.solution, tracker->current_value());
  res.oracle_calls = f.call_count() - calls_before;
  res.rounds = sweeps;
  res.sample_size = sample_size;
  check_feasible_output(sys, res);
  res.elapsed_ms = ms_since(start);
  return res;
}

}  // namespace

SolverResult greedy(const ValueOracle& f, const IndependenceSystem& sys) {
  check_same_ground(f, sys);
  std::vector<int> pool(static_cast<std::size_t>(f.ground_size()));
  std::iota(pool.begin(), pool.end(), 0);
  return greedy_over_pool(f, sys, std::move(pool), f.ground_size());
}

SolverResult sample_greedy(const ValueOracle& f, const IndependenceSystem& sys,
                           double p, Rng& rng) {
  check_same_ground(f, sys);
  if (!(p > 0.0 && p <= 1.0)) {
    throw ConfigError("p must be in (0, 1], got " + std::to_string(p));
  }
  const ElementSet sample = sample_subset(f.ground_size(), p, rng);
  return greedy_over_pool(f, sys, sample.elements(), sample.size());
}

SolverResult brute_force_opt(const ValueOracle& f,
                             const IndependenceSystem& sys) {
  const auto start = Clock::now();
  check_same_ground(f, sys);
  const int n = f.ground_size();
  if (n > 20) {
    throw CapacityError("brute_force_opt enumerates all independent sets and "
                        "supports n <= 20, got n=" + std::to_string(n));
  }
  const std::int64_t calls_before = f.call_count();

  ElementSet best_set(n);
  double best_value = 0.0;  // f(∅) for a normalized objective
  int best_size = 0;

  // Preorder enumeration in ascending-id order visits sets in
  // lexicographic order of their element lists, so keeping the first
  // strictly better candidate plus the size tie-break yields the
  // smallest optimal solution deterministically.
  auto consider = [&](const GainTracker& t) {
    const double v = t.current_value();
    if (v > best_value ||
        (v == best_value && t.current().size() < best_size)) {
      best_value = v;
      best_set = t.current();
      best_size = t.current().size();
    }
  };

  auto dfs = [&](auto&& self, const GainTracker& tracker,
                 const FeasibilityState& feasible, int first) -> void {
    consider(tracker);
    for (int u = first; u < n; ++u) {
      if (!feasible.can_add(u)) continue;
      auto child_tracker = tracker.clone();
      child_tracker->gain(u);  // one evaluation per independent set visited
      child_tracker->add(u);
      auto child_feasible = feasible.clone();
      child_feasible->add(u);
      self(self, *child_tracker, *child_feasible, u + 1);
    }
  };

  auto root_tracker = f.make_tracker();
  auto root_feasible = sys.new_state();
  dfs(dfs, *root_tracker, *root_feasible, 0);

  SolverResult res;
  res.solution = best_set;
  res.value = recheck_value(f, best_set, best_value);
  res.oracle_calls = f.call_count() - calls_before;
  res.rounds = 0;
  res.sample_size = n;
  check_feasible_output(sys, res);
  res.elapsed_ms = ms_since(start);
  return res;
}

// ---------------------------------------------------------------------------
// Statistics

namespace {

struct RunningStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  double std_error() const {
    if (count < 2) return 0.0;
    const double variance = m2 / static_cast<double>(count - 1);
    return std::sqrt(variance / static_cast<double>(count));
  }
};

}  // namespace

StatReport make_stat_report(const std::vector<double>& samples, double bound) {
  RunningStats stats;
  for (double x : samples) stats.push(x);
  StatReport report;
  report.trials = stats.count;
  report.mean = stats.mean;
  report.std_error = stats.std_error();
  report.bound = bound;
  report.passed = report.mean - 3.0 * report.std_error >= bound;
  return report;
}

StatReport claim1_check(const ValueOracle& h, double p, std::int64_t trials,
                        Rng& rng) {
  if (trials < 100) {
    throw ConfigError("claim1_check needs trials >= 100, got " +
                      std::to_string(trials));
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("p must lie in [0, 1], got " + std::to_string(p));
  }
  const int n = h.ground_size();
  const double h_empty = h.eval(ElementSet(n));
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    samples.push_back(h.eval(sample_subset(n, p, rng)));
  }
  return make_stat_report(samples, (1.0 - p) * h_empty);
}

// ---------------------------------------------------------------------------
// Algorithm dispatch and trial running

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::sdtga: return "sdtga";
    case Algorithm::greedy: return "greedy";
    case Algorithm::sample_greedy: return "sample_greedy";
    case Algorithm::brute_force: return "brute_force";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "sdtga") return Algorithm::sdtga;
  if (name == "greedy") return Algorithm::greedy;
  if (name == "sample_greedy") return Algorithm::sample_greedy;
  if (name == "brute_force") return Algorithm::brute_force;
  return std::nullopt;
}

bool uses_p(Algorithm algorithm) {
  return algorithm == Algorithm::sdtga || algorithm == Algorithm::sample_greedy;
}

bool uses_epsilon(Algorithm algorithm) { return algorithm == Algorithm::sdtga; }

SolverResult run_algorithm(Algorithm algorithm, const ValueOracle& f,
                           const IndependenceSystem& sys,
                           const SolverConfig& cfg) {
  switch (algorithm) {
    case Algorithm::sdtga:
      return sdtga(f, sys, cfg);
    case Algorithm::greedy:
      return greedy(f, sys);
    case Algorithm::sample_greedy: {
      Rng rng(cfg.seed, 0);
      return sample_greedy(f, sys, cfg.p, rng);
    }
    case Algorithm::brute_force:
      return brute_force_opt(f, sys);
  }
  throw ConfigError("unknown algorithm");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SUBMAX_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

StatReport TrialsReport::value_stat(double bound) const {
  std::vector<double> values;
  values.reserve(rows.size());
  for (const TrialRow& row : rows) values.push_back(row.value);
  return make_stat_report(values, bound);
}

StatReport TrialsReport::ratio_stat(double bound) const {
  std::vector<double> ratios;
  ratios.reserve(rows.size());
  for (const TrialRow& row : rows) {
    if (!row.ratio) {
      throw ConfigError("ratio_stat requires a known positive optimum");
    }
    ratios.push_back(*row.ratio);
  }
  return make_stat_report(ratios, bound);
}

TrialsReport run_trials(Algorithm algorithm, const ValueOracle& f,
                        const IndependenceSystem& sys,
                        const SolverConfig& base_cfg, int trials,
                        std::uint64_t master_seed, std::optional<double> opt,
                        int threads) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  TrialsReport report;
  report.opt = opt;
  report.rows.resize(static_cast<std::size_t>(trials));

  const int workers = std::min(resolve_threads(threads), trials);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    try {
      // Each trial owns a cloned oracle (fresh counter) and a derived
      // sub-seed, so scheduling cannot affect any row.
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= trials) break;
        SolverConfig cfg = base_cfg;
        cfg.seed = derive_seed(master_seed, static_cast<std::uint64_t>(i));
        cfg.record_trace = false;
        const auto oracle = f.clone();
        const SolverResult res = run_algorithm(algorithm, *oracle, sys, cfg);
        TrialRow& row = report.rows[static_cast<std::size_t>(i)];
        row.trial = i;
        row.seed = cfg.seed;
        row.value = res.value;
        if (opt && *opt > 0.0) row.ratio = res.value / *opt;
        row.oracle_calls = res.oracle_calls;
        row.rounds = res.rounds;
        row.sample_size = res.sample_size;
        row.elapsed_ms = res.elapsed_ms;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      next.store(trials);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  RunningStats value_stats;
  RunningStats ratio_stats;
  RunningStats call_stats;
  RunningStats round_stats;
  bool all_ratios = true;
  for (const TrialRow& row : report.rows) {
    value_stats.push(row.value);
    call_stats.push(static_cast<double>(row.oracle_calls));
    round_stats.push(static_cast<double>(row.rounds));
    if (row.ratio) {
      ratio_stats.push(*row.ratio);
    } else {
      all_ratios = false;
    }
  }
  report.mean_value = value_stats.mean;
  report.se_value = value_stats.std_error();
  report.mean_oracle_calls = call_stats.mean;
  report.mean_rounds = round_stats.mean;
  if (all_ratios && !report.rows.empty()) {
    report.mean_ratio = ratio_stats.mean;
    report.se_ratio = ratio_stats.std_error();
  }
  return report;
}

}  // namespace submax
