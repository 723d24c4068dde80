#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "submax/element_set.hpp"

namespace submax {

class Rng;
class ValueOracle;

// Comparison tolerance for objective values. All shipped objectives are
// sums and maxes of input weights, so drift stays far below this.
inline constexpr double kValueTolerance = 1e-9;

// Incremental marginal-gain evaluator owned by one solver run. gain()
// reports Δf(u | S) for the tracked set S and counts one oracle call
// where an incremental fast path exists; add() extends S and is free for
// the shipped kinds. Never share a tracker across threads.
class GainTracker {
 public:
  virtual ~GainTracker() = default;
  virtual std::unique_ptr<GainTracker> clone() const = 0;

  double gain(int u);
  void add(int u);

  const ElementSet& current() const { return current_; }
  double current_value() const { return value_; }

 protected:
  GainTracker(const ValueOracle& f);
  virtual double gain_impl(int u, int& evals) const = 0;
  // Returns the gain folded into the running value and updates any
  // incremental state; sets evals to the evaluations this cost (0 for
  // the shipped kinds).
  virtual double add_impl(int u, int& evals) = 0;

  const ValueOracle* f_;
  ElementSet current_;
  double value_ = 0.0;
};

// Non-negative normalized set-function evaluator. Payloads are immutable
// and shared across clones; the call counter is the only mutable state
// and is owned per run.
class ValueOracle {
 public:
  virtual ~ValueOracle() = default;

  virtual int ground_size() const = 0;
  virtual bool monotone_hint() const = 0;
  virtual std::string kind() const = 0;
  virtual std::unique_ptr<ValueOracle> clone() const = 0;  // fresh counter

  // f(S); counts one evaluation.
  double eval(const ElementSet& s) const;

  // Δf(u|S) = f(S ∪ {u}) − f(S); u must not be in S. Counts one
  // evaluation when a single-pass path exists, two otherwise.
  double marginal_gain(int u, const ElementSet& s) const;

  // The two-eval definitional form; always counts two.
  double marginal_gain_definitional(int u, const ElementSet& s) const;

  // f(S) without touching the counter (diagnostics, post-hoc checks).
  double eval_uncounted(const ElementSet& s) const;

  std::int64_t call_count() const { return calls_; }
  void reset_count() const { calls_ = 0; }
  void add_calls(std::int64_t k) const { calls_ += k; }

  virtual std::unique_ptr<GainTracker> make_tracker() const;

 protected:
  virtual double value_of(const ElementSet& s) const = 0;
  // Single-pass Δf(u|S) where available; the default evaluates twice.
  virtual double marginal_of(int u, const ElementSet& s, int& evals) const;

 private:
  void check_args(const ElementSet& s) const;
  mutable std::int64_t calls_ = 0;

  friend class GainTracker;
  friend class DefinitionalTracker;
};

std::unique_ptr<ValueOracle> make_modular(std::vector<double> weights);

std::unique_ptr<ValueOracle> make_coverage(
    std::vector<double> universe_weights, std::vector<std::vector<int>> covers);

// Rows are clients, columns are facilities (the ground set). A client
// with no open facility contributes max over ∅ = 0.
std::unique_ptr<ValueOracle> make_facility_location(
    std::vector<std::vector<double>> client_weights);

struct GraphEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
};

std::unique_ptr<ValueOracle> make_graph_cut(int n, std::vector<GraphEdge> edges);

// h(X) = f(X ∪ F). Submodular whenever f is, but not normalized when
// f(F) > 0; marginals fall back to the two-eval route.
std::unique_ptr<ValueOracle> shift_by_union(const ValueOracle& base,
                                            ElementSet fixed);

struct PropertyWitness {
  ElementSet a;
  std::optional<ElementSet> b;
  std::optional<int> element;
  std::string to_string() const;
};

struct PropertyReport {
  bool passed = true;
  std::int64_t trials = 0;
  // Smallest margin observed; a margin below -kValueTolerance fails.
  double worst_violation = 0.0;
  std::optional<PropertyWitness> witness;
};

// Diminishing returns on random chains A ⊆ B, u ∉ B.
PropertyReport verify_submodularity(const ValueOracle& f, std::int64_t trials,
                                    Rng& rng);
// All chains; n <= 10.
PropertyReport verify_submodularity_exhaustive(const ValueOracle& f);

// f(∅) = 0 and f(S) >= 0, on random subsets / exhaustively (n <= 14).
PropertyReport verify_nonneg_normalized(const ValueOracle& f,
                                        std::int64_t trials, Rng& rng);
PropertyReport verify_nonneg_normalized_exhaustive(const ValueOracle& f);

// Δf(u|S) >= 0 spot-check for kinds that declare monotone_hint.
PropertyReport verify_monotone(const ValueOracle& f, std::int64_t trials,
                               Rng& rng);
PropertyReport verify_monotone_exhaustive(const ValueOracle& f);  // n <= 10

// Objective description sub-schema of the instance file.
std::unique_ptr<ValueOracle> build_objective(const nlohmann::json& desc);
nlohmann::json objective_to_json(const ValueOracle& f);

}  // namespace submax
