#include "submax/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "submax/errors.hpp"
#include "submax/rng.hpp"

namespace submax {

// ---------------------------------------------------------------------------
// GainTracker / ValueOracle base

GainTracker::GainTracker(const ValueOracle& f)
    : f_(&f), current_(f.ground_size()) {}

double GainTracker::gain(int u) {
  if (current_.contains(u)) {
    throw DomainError("marginal gain requested for element " +
                      std::to_string(u) + " already in S");
  }
  int evals = 0;
  const double g = gain_impl(u, evals);
  f_->add_calls(evals);
  return g;
}

void GainTracker::add(int u) {
  if (current_.contains(u)) {
    throw DomainError("element " + std::to_string(u) + " already in S");
  }
  int evals = 0;
  value_ += add_impl(u, evals);
  f_->add_calls(evals);
  current_.insert(u);
}

void ValueOracle::check_args(const ElementSet& s) const {
  if (s.universe_size() != ground_size()) {
    throw DomainError("set over ground set of size " +
                      std::to_string(s.universe_size()) +
                      " passed to an oracle over " +
                      std::to_string(ground_size()) + " elements");
  }
}

double ValueOracle::eval(const ElementSet& s) const {
  check_args(s);
  calls_ += 1;
  return value_of(s);
}

double ValueOracle::eval_uncounted(const ElementSet& s) const {
  check_args(s);
  return value_of(s);
}

double ValueOracle::marginal_gain(int u, const ElementSet& s) const {
  check_args(s);
  if (s.contains(u)) {
    throw DomainError("marginal gain requested for element " +
                      std::to_string(u) + " already in S");
  }
  int evals = 0;
  const double g = marginal_of(u, s, evals);
  calls_ += evals;
  return g;
}

double ValueOracle::marginal_gain_definitional(int u,
                                               const ElementSet& s) const {
  check_args(s);
  if (s.contains(u)) {
    throw DomainError("marginal gain requested for element " +
                      std::to_string(u) + " already in S");
  }
  return eval(s.with(u)) - eval(s);
}

double ValueOracle::marginal_of(int u, const ElementSet& s, int& evals) const {
  evals = 2;
  return value_of(s.with(u)) - value_of(s);
}

// Fallback tracker for oracles without incremental state; each gain and
// each add costs two definitional evaluations.
class DefinitionalTracker final : public GainTracker {
 public:
  explicit DefinitionalTracker(const ValueOracle& f) : GainTracker(f) {}
  std::unique_ptr<GainTracker> clone() const override {
    return std::make_unique<DefinitionalTracker>(*this);
  }

 protected:
  double gain_impl(int u, int& evals) const override {
    return f_->marginal_of(u, current_, evals);
  }
  double add_impl(int u, int& evals) override {
    return f_->marginal_of(u, current_, evals);
  }
};

std::unique_ptr<GainTracker> ValueOracle::make_tracker() const {
  return std::make_unique<DefinitionalTracker>(*this);
}

// ---------------------------------------------------------------------------
// Modular: f(S) = Σ_{u∈S} w_u

namespace {

struct ModularPayload {
  std::vector<double> weights;
};

class ModularTracker final : public GainTracker {
 public:
  ModularTracker(const ValueOracle& f, std::shared_ptr<const ModularPayload> p)
      : GainTracker(f), payload_(std::move(p)) {}
  std::unique_ptr<GainTracker> clone() const override {
    return std::make_unique<ModularTracker>(*this);
  }

 protected:
  double gain_impl(int u, int& evals) const override {
    evals = 1;
    return payload_->weights[static_cast<std::size_t>(u)];
  }
  double add_impl(int u, int& evals) override {
    evals = 0;
    return payload_->weights[static_cast<std::size_t>(u)];
  }

 private:
  std::shared_ptr<const ModularPayload> payload_;
};

class ModularOracle final : public ValueOracle {
 public:
  explicit ModularOracle(std::shared_ptr<const ModularPayload> p)
      : payload_(std::move(p)) {}
  int ground_size() const override {
    return static_cast<int>(payload_->weights.size());
  }
  bool monotone_hint() const override { return true; }
  std::string kind() const override { return "modular"; }
  std::unique_ptr<ValueOracle> clone() const override {
    return std::make_unique<ModularOracle>(payload_);
  }
  std::unique_ptr<GainTracker> make_tracker() const override {
    return std::make_unique<ModularTracker>(*this, payload_);
  }
  const ModularPayload& payload() const { return *payload_; }

 protected:
  double value_of(const ElementSet& s) const override {
    double total = 0.0;
    s.for_each([&](int u) {
      total += payload_->weights[static_cast<std::size_t>(u)];
    });
    return total;
  }
  double marginal_of(int u, const ElementSet&, int& evals) const override {
    evals = 1;
    return payload_->weights[static_cast<std::size_t>(u)];
  }

 private:
  std::shared_ptr<const ModularPayload> payload_;
};

}  // namespace

std::unique_ptr<ValueOracle> make_modular(std::vector<double> weights) {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) {
      throw ValidationError("weights[" + std::to_string(i) +
                            "] must be non-negative, got " +
                            std::to_string(weights[i]));
    }
  }
  auto payload = std::make_shared<ModularPayload>();
  payload->weights = std::move(weights);
  return std::make_unique<ModularOracle>(std::move(payload));
}

// ---------------------------------------------------------------------------
// Coverage: f(S) = total weight of universe items covered by S

namespace {

struct CoveragePayload {
  std::vector<double> item_weights;
  std::vector<std::vector<int>> covers;  // per element, sorted unique items
};

class CoverageTracker final : public GainTracker {
 public:
  CoverageTracker(const ValueOracle& f,
                  std::shared_ptr<const CoveragePayload> p)
      : GainTracker(f),
        payload_(std::move(p)),
        covered_(payload_->item_weights.size(), 0) {}
  std::unique_ptr<GainTracker> clone() const override {
    return std::make_unique<CoverageTracker>(*this);
  }

 protected:
  double gain_impl(int u, int& evals) const override {
    evals = 1;
    double total = 0.0;
    for (int item : payload_->covers[static_cast<std::size_t>(u)]) {
      if (!covered_[static_cast<std::size_t>(item)]) {
        total += payload_->item_weights[static_cast<std::size_t>(item)];
      }
    }
    return total;
  }
  double add_impl(int u, int& evals) override {
    evals = 0;
    double total = 0.0;
    for (int item : payload_->covers[static_cast<std::size_t>(u)]) {
      if (!covered_[static_cast<std::size_t>(item)]) {
        total += payload_->item_weights[static_cast<std::size_t>(item)];
        covered_[static_cast<std::size_t>(item)] = 1;
      }
    }
    return total;
  }

 private:
  std::shared_ptr<const CoveragePayload> payload_;
  std::vector<char> covered_;
};

class CoverageOracle final : public ValueOracle {
 public:
  explicit CoverageOracle(std::shared_ptr<const CoveragePayload> p)
      : payload_(std::move(p)) {}
  int ground_size() const override {
    return static_cast<int>(payload_->covers.size());
  }
  bool monotone_hint() const override { return true; }
  std::string kind() const override { return "coverage"; }
  std::unique_ptr<ValueOracle> clone() const override {
    return std::make_unique<CoverageOracle>(payload_);
  }
  std::unique_ptr<GainTracker> make_tracker() const override {
    return std::make_unique<CoverageTracker>(*this, payload_);
  }
  const CoveragePayload& payload() const { return *payload_; }

 protected:
  double value_of(const ElementSet& s) const override {
    std::vector<char> covered(payload_->item_weights.size(), 0);
    double total = 0.0;
    s.for_each([&](int u) {
      for (int item : payload_->covers[static_cast<std::size_t>(u)]) {
        if (!covered[static_cast<std::size_t>(item)]) {
          covered[static_cast<std::size_t>(item)] = 1;
          total += payload_->item_weights[static_cast<std::size_t>(item)];
        }
      }
    });
    return total;
  }
  double marginal_of(int u, const ElementSet& s, int& evals) const override {
    evals = 1;
    std::vector<char> covered(payload_->item_weights.size(), 0);
    s.for_each([&](int v) {
      for (int item : payload_->covers[static_cast<std::size_t>(v)]) {
        covered[static_cast<std::size_t>(item)] = 1;
      }
    });
    double total = 0.0;
    for (int item : payload_->covers[static_cast<std::size_t>(u)]) {
      if (!covered[static_cast<std::size_t>(item)]) {
        total += payload_->item_weights[static_cast<std::size_t>(item)];
      }
    }
    return total;
  }

 private:
  std::shared_ptr<const CoveragePayload> payload_;
};

}  // namespace

std::unique_ptr<ValueOracle> make_coverage(
    std::vector<double> universe_weights,
    std::vector<std::vector<int>> covers) {
  for (std::size_t i = 0; i < universe_weights.size(); ++i) {
    if (!(universe_weights[i] >= 0.0)) {
      throw ValidationError("universe_weights[" + std::to_string(i) +
                            "] must be non-negative, got " +
                            std::to_string(universe_weights[i]));
    }
  }
  const int m = static_cast<int>(universe_weights.size());
  for (std::size_t e = 0; e < covers.size(); ++e) {
    for (std::size_t j = 0; j < covers[e].size(); ++j) {
      const int item = covers[e][j];
      if (item < 0 || item >= m) {
        throw ValidationError("covers[" + std::to_string(e) + "][" +
                              std::to_string(j) + "] = " +
                              std::to_string(item) +
                              " outside the universe of size " +
                              std::to_string(m));
      }
    }
    std::sort(covers[e].begin(), covers[e].end());
    covers[e].erase(std::unique(covers[e].begin(), covers[e].end()),
                    covers[e].end());
  }
  auto payload = std::make_shared<CoveragePayload>();
  payload->item_weights = std::move(universe_weights);
  payload->covers = std::move(covers);
  return std::make_unique<CoverageOracle>(std::move(payload));
}

// ---------------------------------------------------------------------------
// Facility location: f(S) = Σ_clients max_{u∈S} w[client][u], max over ∅ = 0

namespace {

struct FacilityPayload {
  std::vector<std::vector<double>> rows;  // client-major
  int facilities = 0;
};

class FacilityTracker final : public GainTracker {
 public:
  FacilityTracker(const ValueOracle& f,
                  std::shared_ptr<const FacilityPayload> p)
      : GainTracker(f), payload_(std::move(p)), best_(payload_->rows.size(), 0.0) {}
  std::unique_ptr<GainTracker> clone() const override {
    return std::make_unique<FacilityTracker>(*this);
  }

 protected:
  double gain_impl(int u, int& evals) const override {
    evals = 1;
    double total = 0.0;
    for (std::size_t c = 0; c < payload_->rows.size(); ++c) {
      const double w = payload_->rows[c][static_cast<std::size_t>(u)];
      if (w > best_[c]) total += w - best_[c];
    }
    return total;
  }
  double add_impl(int u, int& evals) override {
    evals = 0;
    double total = 0.0;
    for (std::size_t c = 0; c < payload_->rows.size(); ++c) {
      const double w = payload_->rows[c][static_cast<std::size_t>(u)];
      if (w > best_[c]) {
        total += w - best_[c];
        best_[c] = w;
      }
    }
    return total;
  }

 private:
  std::shared_ptr<const FacilityPayload> payload_;
  std::vector<double> best_;
};

class FacilityLocationOracle final : public ValueOracle {
 public:
  explicit FacilityLocationOracle(std::shared_ptr<const FacilityPayload> p)
      : payload_(std::move(p)) {}
  int ground_size() const override { return payload_->facilities; }
  bool monotone_hint() const override { return true; }
  std::string kind() const override { return "facility_location"; }
  std::unique_ptr<ValueOracle> clone() const override {
    return std::make_unique<FacilityLocationOracle>(payload_);
  }
  std::unique_ptr<GainTracker> make_tracker() const override {
    return std::make_unique<FacilityTracker>(*this, payload_);
  }
  const FacilityPayload& payload() const { return *payload_; }

 protected:
  double value_of(const ElementSet& s) const override {
    const std::vector<int> members = s.elements();
    double total = 0.0;
    for (const auto& row : payload_->rows) {
      double best = 0.0;
      for (int u : members) best = std::max(best, row[static_cast<std::size_t>(u)]);
      total += best;
    }
    return total;
  }
  double marginal_of(int u, const ElementSet& s, int& evals) const override {
    evals = 1;
    const std::vector<int> members = s.elements();
    double total = 0.0;
    for (const auto& row : payload_->rows) {
      double best = 0.0;
      for (int v : members) best = std::max(best, row[static_cast<std::size_t>(v)]);
      const double w = row[static_cast<std::size_t>(u)];
      if (w > best) total += w - best;
    }
    return total;
  }

 private:
  std::shared_ptr<const FacilityPayload> payload_;
};

}  // namespace

std::unique_ptr<ValueOracle> make_facility_location(
    std::vector<std::vector<double>> client_weights) {
  auto payload = std::make_shared<FacilityPayload>();
  payload->facilities =
      client_weights.empty() ? 0 : static_cast<int>(client_weights[0].size());
  for (std::size_t c = 0; c < client_weights.size(); ++c) {
    if (static_cast<int>(client_weights[c].size()) != payload->facilities) {
      throw ValidationError("weights[" + std::to_string(c) +
                            "] has a different length; rows must be "
                            "rectangular");
    }
    for (std::size_t u = 0; u < client_weights[c].size(); ++u) {
      if (!(client_weights[c][u] >= 0.0)) {
        throw ValidationError("weights[" + std::to_string(c) + "][" +
                              std::to_string(u) +
                              "] must be non-negative, got " +
                              std::to_string(client_weights[c][u]));
      }
    }
  }
  payload->rows = std::move(client_weights);
  return std::make_unique<FacilityLocationOracle>(std::move(payload));
}

// ---------------------------------------------------------------------------
// Graph cut: f(S) = total weight of edges with exactly one endpoint in S

namespace {

struct CutPayload {
  int n = 0;
  std::vector<GraphEdge> edges;
  std::vector<std::vector<std::pair<int, double>>> adj;
};

class CutTracker final : public GainTracker {
 public:
  CutTracker(const ValueOracle& f, std::shared_ptr<const CutPayload> p)
      : GainTracker(f), payload_(std::move(p)), in_(static_cast<std::size_t>(payload_->n), 0) {}
  std::unique_ptr<GainTracker> clone() const override {
    return std::make_unique<CutTracker>(*this);
  }

 protected:
  double gain_impl(int u, int& evals) const override {
    evals = 1;
    double total = 0.0;
    for (const auto& [v, w] : payload_->adj[static_cast<std::size_t>(u)]) {
      total += in_[static_cast<std::size_t>(v)] ? -w : w;
    }
    return total;
  }
  double add_impl(int u, int& evals) override {
    evals = 0;
    double total = 0.0;
    for (const auto& [v, w] : payload_->adj[static_cast<std::size_t>(u)]) {
      total += in_[static_cast<std::size_t>(v)] ? -w : w;
    }
    in_[static_cast<std::size_t>(u)] = 1;
    return total;
  }

 private:
  std::shared_ptr<const CutPayload> payload_;
  std::vector<char> in_;
};

class GraphCutOracle final : public ValueOracle {
 public:
  explicit GraphCutOracle(std::shared_ptr<const CutPayload> p)
      : payload_(std::move(p)) {}
  int ground_size() const override { return payload_->n; }
  bool monotone_hint() const override { return false; }
  std::string kind() const override { return "graph_cut"; }
  std::unique_ptr<ValueOracle> clone() const override {
    return std::make_unique<GraphCutOracle>(payload_);
  }
  std::unique_ptr<GainTracker> make_tracker() const override {
    return std::make_unique<CutTracker>(*this, payload_);
  }
  const CutPayload& payload() const { return *payload_; }

 protected:
  double value_of(const ElementSet& s) const override {
    double total = 0.0;
    s.for_each([&](int u) {
      for (const auto& [v, w] : payload_->adj[static_cast<std::size_t>(u)]) {
        if (!s.contains(v)) total += w;
      }
    });
    return total;
  }
  double marginal_of(int u, const ElementSet& s, int& evals) const override {
    evals = 1;
    double total = 0.0;
    for (const auto& [v, w] : payload_->adj[static_cast<std::size_t>(u)]) {
      total += s.contains(v) ? -w : w;
    }
    return total;
  }

 private:
  std::shared_ptr<const CutPayload> payload_;
};

}  // namespace

std::unique_ptr<ValueOracle> make_graph_cut(int n,
                                            std::vector<GraphEdge> edges) {
  if (n < 0) throw ValidationError("graph_cut: n must be non-negative");
  auto payload = std::make_shared<CutPayload>();
  payload->n = n;
  payload->adj.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const GraphEdge& e = edges[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) {
      throw ValidationError(where + " endpoint outside [0, " +
                            std::to_string(n) + ")");
    }
    if (e.a == e.b) {
      throw ValidationError(where + " is a self-loop at " +
                            std::to_string(e.a));
    }
    if (!(e.weight >= 0.0)) {
      throw ValidationError(where + " weight must be non-negative, got " +
                            std::to_string(e.weight));
    }
    payload->adj[static_cast<std::size_t>(e.a)].emplace_back(e.b, e.weight);
    payload->adj[static_cast<std::size_t>(e.b)].emplace_back(e.a, e.weight);
  }
  payload->edges = std::move(edges);
  return std::make_unique<GraphCutOracle>(std::move(payload));
}

// ---------------------------------------------------------------------------
// Union shift

namespace {

class UnionShiftOracle final : public ValueOracle {
 public:
  UnionShiftOracle(std::shared_ptr<const ValueOracle> base, ElementSet fixed)
      : base_(std::move(base)), fixed_(std::move(fixed)) {}
  int ground_size() const override { return base_->ground_size(); }
  bool monotone_hint() const override { return base_->monotone_hint(); }
  std::string kind() const override { return "shift(" + base_->kind() + ")"; }
  std::unique_ptr<ValueOracle> clone() const override {
    return std::make_unique<UnionShiftOracle>(base_, fixed_);
  }

 protected:
  double value_of(const ElementSet& s) const override {
    return base_->eval_uncounted(s.united(fixed_));
  }

 private:
  std::shared_ptr<const ValueOracle> base_;
  ElementSet fixed_;
};

}  // namespace

std::unique_ptr<ValueOracle> shift_by_union(const ValueOracle& base,
                                            ElementSet fixed) {
  if (fixed.universe_size() != base.ground_size()) {
    throw DomainError("shift set and oracle disagree on ground-set size");
  }
  return std::make_unique<UnionShiftOracle>(
      std::shared_ptr<const ValueOracle>(base.clone()), std::move(fixed));
}

// ---------------------------------------------------------------------------
// Property verifiers

std::string PropertyWitness::to_string() const {
  std::ostringstream out;
  out << "A=" << a.to_string();
  if (b) out << " B=" << b->to_string();
  if (element) out << " u=" << *element;
  return out.str();
}

namespace {

struct MarginTracker {
  double worst = 0.0;
  bool any = false;
  std::optional<PropertyWitness> first_violation;

  void record(double margin, const PropertyWitness& w) {
    if (!any || margin < worst) worst = margin;
    any = true;
    if (margin < -kValueTolerance && !first_violation) first_violation = w;
  }

  PropertyReport finish(std::int64_t trials) const {
    PropertyReport report;
    report.trials = trials;
    report.worst_violation = any ? worst : 0.0;
    report.passed = report.worst_violation >= -kValueTolerance;
    report.witness = first_violation;
    return report;
  }
};

std::vector<double> value_table(const ValueOracle& f, int n) {
  std::vector<double> vals(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    vals[m] = f.eval(ElementSet::from_mask(n, m));
  }
  return vals;
}

}  // namespace

PropertyReport verify_submodularity(const ValueOracle& f, std::int64_t trials,
                                    Rng& rng) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const int n = f.ground_size();
  MarginTracker tracker;
  std::int64_t checks = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    ElementSet b = sample_subset(n, 0.5, rng);
    ElementSet a(n);
    b.for_each([&](int u) {
      if (rng.bernoulli(0.5)) a.insert(u);
    });
    std::vector<int> outside;
    for (int u = 0; u < n; ++u) {
      if (!b.contains(u)) outside.push_back(u);
    }
    if (outside.empty()) continue;
    const int u = outside[static_cast<std::size_t>(
        rng.next_below(static_cast<int>(outside.size())))];
    const double margin = f.marginal_gain(u, a) - f.marginal_gain(u, b);
    ++checks;
    tracker.record(margin, PropertyWitness{a, b, u});
  }
  return tracker.finish(checks);
}

PropertyReport verify_submodularity_exhaustive(const ValueOracle& f) {
  const int n = f.ground_size();
  if (n > 10) {
    throw CapacityError("exhaustive submodularity check supports n <= 10, "
                        "got n=" + std::to_string(n));
  }
  const std::vector<double> vals = value_table(f, n);
  MarginTracker tracker;
  std::int64_t checks = 0;
  for (std::uint32_t b = 0; b < (1u << n); ++b) {
    // iterate A ⊆ B via submask enumeration
    std::uint32_t a = b;
    while (true) {
      for (int u = 0; u < n; ++u) {
        const std::uint32_t bit = 1u << u;
        if ((b & bit) != 0) continue;
        const double margin = (vals[a | bit] - vals[a]) -
                              (vals[b | bit] - vals[b]);
        ++checks;
        tracker.record(margin,
                       PropertyWitness{ElementSet::from_mask(n, a),
                                       ElementSet::from_mask(n, b), u});
      }
      if (a == 0) break;
      a = (a - 1) & b;
    }
  }
  return tracker.finish(checks);
}

PropertyReport verify_nonneg_normalized(const ValueOracle& f,
                                        std::int64_t trials, Rng& rng) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const int n = f.ground_size();
  MarginTracker tracker;
  const ElementSet empty(n);
  tracker.record(-std::abs(f.eval(empty)),
                 PropertyWitness{empty, std::nullopt, std::nullopt});
  for (std::int64_t t = 0; t < trials; ++t) {
    ElementSet s = sample_subset(n, 0.5, rng);
    tracker.record(f.eval(s), PropertyWitness{s, std::nullopt, std::nullopt});
  }
  return tracker.finish(trials + 1);
}

PropertyReport verify_nonneg_normalized_exhaustive(const ValueOracle& f) {
  const int n = f.ground_size();
  if (n > 14) {
    throw CapacityError("exhaustive non-negativity check supports n <= 14, "
                        "got n=" + std::to_string(n));
  }
  MarginTracker tracker;
  const ElementSet empty(n);
  tracker.record(-std::abs(f.eval(empty)),
                 PropertyWitness{empty, std::nullopt, std::nullopt});
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    ElementSet s = ElementSet::from_mask(n, m);
    tracker.record(f.eval(s), PropertyWitness{s, std::nullopt, std::nullopt});
  }
  return tracker.finish((std::int64_t{1} << n) + 1);
}

PropertyReport verify_monotone(const ValueOracle& f, std::int64_t trials,
                               Rng& rng) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const int n = f.ground_size();
  MarginTracker tracker;
  std::int64_t checks = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    ElementSet s = sample_subset(n, 0.5, rng);
    std::vector<int> outside;
    for (int u = 0; u < n; ++u) {
      if (!s.contains(u)) outside.push_back(u);
    }
    if (outside.empty()) continue;
    const int u = outside[static_cast<std::size_t>(
        rng.next_below(static_cast<int>(outside.size())))];
    ++checks;
    tracker.record(f.marginal_gain(u, s),
                   PropertyWitness{s, std::nullopt, u});
  }
  return tracker.finish(checks);
}

PropertyReport verify_monotone_exhaustive(const ValueOracle& f) {
  const int n = f.ground_size();
  if (n > 10) {
    throw CapacityError("exhaustive monotonicity check supports n <= 10, "
                        "got n=" + std::to_string(n));
  }
  const std::vector<double> vals = value_table(f, n);
  MarginTracker tracker;
  std::int64_t checks = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    for (int u = 0; u < n; ++u) {
      const std::uint32_t bit = 1u << u;
      if ((s & bit) != 0) continue;
      ++checks;
      tracker.record(vals[s | bit] - vals[s],
                     PropertyWitness{ElementSet::from_mask(n, s),
                                     std::nullopt, u});
    }
  }
  return tracker.finish(checks);
}

// ---------------------------------------------------------------------------
// JSON schema

std::unique_ptr<ValueOracle> build_objective(const nlohmann::json& desc) {
  if (!desc.is_object() || !desc.contains("kind") ||
      !desc["kind"].is_string()) {
    throw ValidationError("objective: missing string field \"kind\"");
  }
  const std::string kind = desc["kind"].get<std::string>();
  if (kind == "modular") {
    if (!desc.contains("weights") || !desc["weights"].is_array()) {
      throw ValidationError("objective: modular requires array \"weights\"");
    }
    return make_modular(desc["weights"].get<std::vector<double>>());
  }
  if (kind == "coverage") {
    if (!desc.contains("universe_weights") ||
        !desc["universe_weights"].is_array() || !desc.contains("covers") ||
        !desc["covers"].is_array()) {
      throw ValidationError(
          "objective: coverage requires arrays \"universe_weights\" and "
          "\"covers\"");
    }
    return make_coverage(
        desc["universe_weights"].get<std::vector<double>>(),
        desc["covers"].get<std::vector<std::vector<int>>>());
  }
  if (kind == "facility_location") {
    if (!desc.contains("weights") || !desc["weights"].is_array()) {
      throw ValidationError(
          "objective: facility_location requires array \"weights\"");
    }
    return make_facility_location(
        desc["weights"].get<std::vector<std::vector<double>>>());
  }
  if (kind == "graph_cut") {
    if (!desc.contains("n") || !desc["n"].is_number_integer() ||
        !desc.contains("edges") || !desc["edges"].is_array()) {
      throw ValidationError(
          "objective: graph_cut requires integer \"n\" and array \"edges\"");
    }
    std::vector<GraphEdge> edges;
    std::size_t i = 0;
    for (const auto& e : desc["edges"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
          !e[1].is_number_integer() || !e[2].is_number()) {
        throw ValidationError("objective: edges[" + std::to_string(i) +
                              "] must be [u, v, weight]");
      }
      edges.push_back(
          GraphEdge{e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
      ++i;
    }
    return make_graph_cut(desc["n"].get<int>(), std::move(edges));
  }
  throw ValidationError("objective: unknown kind \"" + kind + "\"");
}

nlohmann::json objective_to_json(const ValueOracle& f) {
  if (const auto* m = dynamic_cast<const ModularOracle*>(&f)) {
    return {{"kind", "modular"}, {"weights", m->payload().weights}};
  }
  if (const auto* c = dynamic_cast<const CoverageOracle*>(&f)) {
    return {{"kind", "coverage"},
            {"universe_weights", c->payload().item_weights},
            {"covers", c->payload().covers}};
  }
  if (const auto* fl = dynamic_cast<const FacilityLocationOracle*>(&f)) {
    return {{"kind", "facility_location"}, {"weights", fl->payload().rows}};
  }
  if (const auto* g = dynamic_cast<const GraphCutOracle*>(&f)) {
    nlohmann::json edges = nlohmann::json::array();
    for (const GraphEdge& e : g->payload().edges) {
      edges.push_back({e.a, e.b, e.weight});
    }
    return {{"kind", "graph_cut"},
            {"n", g->payload().n},
            {"edges", std::move(edges)}};
  }
  throw DomainError("objective kind has no JSON form");
}

}  // namespace submax
