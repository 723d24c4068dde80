// Test-only fixtures: known-bad objective plants for the property
// verifiers, an explicit-family independence system, and a wrapper that
// recounts underlying evaluations independently of the oracle protocol.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <vector>

#include "submax/constraints.hpp"
#include "submax/element_set.hpp"
#include "submax/objectives.hpp"

namespace submax::testing {

// f(S) = |S|^2: supermodular, so the diminishing-returns check must
// reject it.
class SupermodularPlant final : public ValueOracle {
 public:
  explicit SupermodularPlant(int n) : n_(n) {}
  int ground_size() const override { return n_; }
  bool monotone_hint() const override { return true; }
  std::string kind() const override { return "plant-supermodular"; }
  std::unique_ptr<ValueOracle> clone() const override {
    return std::make_unique<SupermodularPlant>(n_);
  }

 protected:
  double value_of(const ElementSet& s) const override {
    return static_cast<double>(s.size()) * static_cast<double>(s.size());
  }

 private:
  int n_;
};

// f(∅) = 0 but f(S) = |S| - 2 otherwise: normalized, negative on
// singletons.
class NegativePlant final : public ValueOracle {
 public:
  explicit NegativePlant(int n) : n_(n) {}
  int ground_size() const override { return n_; }
  bool monotone_hint() const override { return false; }
  std::string kind() const override { return "plant-negative"; }
  std::unique_ptr<ValueOracle> clone() const override {
    return std::make_unique<NegativePlant>(n_);
  }

 protected:
  double value_of(const ElementSet& s) const override {
    return s.empty() ? 0.0 : static_cast<double>(s.size()) - 2.0;
  }

 private:
  int n_;
};

// f(S) = |S| + 1: violates f(∅) = 0.
class OffsetPlant final : public ValueOracle {
 public:
  explicit OffsetPlant(int n) : n_(n) {}
  int ground_size() const override { return n_; }
  bool monotone_hint() const override { return true; }
  std::string kind() const override { return "plant-offset"; }
  std::unique_ptr<ValueOracle> clone() const override {
    return std::make_unique<OffsetPlant>(n_);
  }

 protected:
  double value_of(const ElementSet& s) const override {
    return static_cast<double>(s.size()) + 1.0;
  }

 private:
  int n_;
};

// f ≡ c. Constants are submodular; used by the random-subset lemma
// tests.
class ConstantPlant final : public ValueOracle {
 public:
  ConstantPlant(int n, double c) : n_(n), c_(c) {}
  int ground_size() const override { return n_; }
  bool monotone_hint() const override { return true; }
  std::string kind() const override { return "plant-constant"; }
  std::unique_ptr<ValueOracle> clone() const override {
    return std::make_unique<ConstantPlant>(n_, c_);
  }

 protected:
  double value_of(const ElementSet&) const override { return c_; }

 private:
  int n_;
  double c_;
};

// Independence family given extensionally as bitmasks; n <= 32.
class ExplicitSystem final : public IndependenceSystem {
 public:
  ExplicitSystem(int n, std::vector<std::uint64_t> family, int k = 1)
      : n_(n), family_(std::move(family)), k_(k) {}

  int ground_size() const override { return n_; }
  bool is_independent(const ElementSet& s) const override {
    return std::find(family_.begin(), family_.end(), s.mask()) !=
           family_.end();
  }
  int rank_upper_bound() const override {
    int best = 0;
    for (std::uint64_t m : family_) best = std::max(best, std::popcount(m));
    return best;
  }
  int extendibility() const override { return k_; }
  std::unique_ptr<FeasibilityState> new_state() const override;
  std::string describe() const override { return "explicit-family"; }

 private:
  int n_;
  std::vector<std::uint64_t> family_;
  int k_;
};

class ExplicitState final : public FeasibilityState {
 public:
  ExplicitState(const ExplicitSystem* sys)
      : sys_(sys), current_(sys->ground_size()) {}
  bool can_add(int u) const override {
    return sys_->is_independent(current_.with(u));
  }
  void add(int u) override { current_.insert(u); }
  std::unique_ptr<FeasibilityState> clone() const override {
    return std::make_unique<ExplicitState>(*this);
  }

 private:
  const ExplicitSystem* sys_;
  ElementSet current_;
};

inline std::unique_ptr<FeasibilityState> ExplicitSystem::new_state() const {
  return std::make_unique<ExplicitState>(this);
}

// Forwards to a base oracle while recounting the underlying set-function
// evaluations on its own, so tests can confirm the protocol counter
// matches reality.
class CountingOracle final : public ValueOracle {
 public:
  explicit CountingOracle(std::unique_ptr<ValueOracle> base)
      : base_(std::move(base)),
        underlying_(std::make_shared<std::int64_t>(0)) {}

  int ground_size() const override { return base_->ground_size(); }
  bool monotone_hint() const override { return base_->monotone_hint(); }
  std::string kind() const override { return "counting(" + base_->kind() + ")"; }
  std::unique_ptr<ValueOracle> clone() const override {
    auto copy = std::make_unique<CountingOracle>(base_->clone());
    copy->underlying_ = underlying_;
    return copy;
  }

  std::int64_t underlying_evaluations() const { return *underlying_; }

 protected:
  double value_of(const ElementSet& s) const override {
    ++*underlying_;
    return base_->eval_uncounted(s);
  }

 private:
  std::unique_ptr<ValueOracle> base_;
  std::shared_ptr<std::int64_t> underlying_;
};

// Definitional best-over-all-independent-sets oracle: the reference for
// brute_force_opt on small instances.
inline double exhaustive_best_value(const ValueOracle& f,
                                    const IndependenceSystem& sys) {
  const int n = f.ground_size();
  double best = 0.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    const ElementSet s = ElementSet::from_mask(n, m);
    if (!sys.is_independent(s)) continue;
    best = std::max(best, f.eval_uncounted(s));
  }
  return best;
}

}  // namespace submax::testing
