#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "submax/element_set.hpp"

namespace submax {

// Per-run feasibility bookkeeping. can_add must agree with the owning
// system's is_independent on S ∪ {u}; the definitional recount is the
// test oracle for these incremental counters.
class FeasibilityState {
 public:
  virtual ~FeasibilityState() = default;
  virtual bool can_add(int u) const = 0;
  virtual void add(int u) = 0;  // caller guarantees can_add(u)
  virtual std::unique_ptr<FeasibilityState> clone() const = 0;
};

// Independence oracle over a dense ground set, carrying its declared
// extendibility parameter k and a rank upper bound. Instances are
// immutable and freely shareable across threads; mutable counters live
// in FeasibilityState objects owned by individual runs.
class IndependenceSystem {
 public:
  virtual ~IndependenceSystem() = default;

  virtual int ground_size() const = 0;
  virtual bool is_independent(const ElementSet& s) const = 0;

  // Any integer >= max{|S| : S independent}.
  virtual int rank_upper_bound() const = 0;

  // Declared structurally: 1 for a matroid, m for an m-fold intersection.
  virtual int extendibility() const = 0;

  virtual std::unique_ptr<FeasibilityState> new_state() const = 0;
  virtual std::string describe() const = 0;

  // Equals is_independent(S ∪ {u}); u must not be in S.
  bool can_extend(const ElementSet& s, int u) const;
};

class UniformMatroid final : public IndependenceSystem {
 public:
  UniformMatroid(int n, int capacity);

  int ground_size() const override { return n_; }
  bool is_independent(const ElementSet& s) const override;
  int rank_upper_bound() const override { return capacity_; }
  int extendibility() const override { return 1; }
  std::unique_ptr<FeasibilityState> new_state() const override;
  std::string describe() const override;

  int capacity() const { return capacity_; }

 private:
  int n_;
  int capacity_;
};

class PartitionMatroid final : public IndependenceSystem {
 public:
  struct Block {
    std::vector<int> members;
    int capacity = 0;
  };

  // Blocks must be disjoint and cover [0, n).
  PartitionMatroid(int n, std::vector<Block> blocks);

  int ground_size() const override { return n_; }
  bool is_independent(const ElementSet& s) const override;
  int rank_upper_bound() const override;
  int extendibility() const override { return 1; }
  std::unique_ptr<FeasibilityState> new_state() const override;
  std::string describe() const override;

  const std::vector<Block>& blocks() const { return blocks_; }
  int block_of(int u) const { return block_of_[static_cast<std::size_t>(u)]; }

 private:
  int n_;
  std::vector<Block> blocks_;
  std::vector<int> block_of_;
};

// Conjunction of matroids over one ground set; k equals the member count.
class IntersectionSystem final : public IndependenceSystem {
 public:
  explicit IntersectionSystem(
      std::vector<std::shared_ptr<const IndependenceSystem>> members);

  int ground_size() const override;
  bool is_independent(const ElementSet& s) const override;
  int rank_upper_bound() const override;
  int extendibility() const override {
    return static_cast<int>(members_.size());
  }
  std::unique_ptr<FeasibilityState> new_state() const override;
  std::string describe() const override;

  const std::vector<std::shared_ptr<const IndependenceSystem>>& members()
      const {
    return members_;
  }

 private:
  std::vector<std::shared_ptr<const IndependenceSystem>> members_;
};

std::shared_ptr<const IndependenceSystem> intersect(
    std::vector<std::shared_ptr<const IndependenceSystem>> members);

struct AxiomCounterexample {
  std::string axiom;  // which check failed
  ElementSet a;
  ElementSet b;
  std::optional<int> element;
  std::string to_string() const;
};

struct AxiomReport {
  bool passed = true;
  std::optional<AxiomCounterexample> counterexample;
  std::int64_t checks_performed = 0;
};

// Exhaustive check of the three matroid axioms; n <= 14. Subsets are
// enumerated by size then position so counterexamples are deterministic.
AxiomReport verify_matroid_axioms(const IndependenceSystem& sys);

// Exhaustive check of k-extendibility; n <= 12. Triples (A, B, u) with
// A ⊆ B both independent, u outside B, and A ∪ {u} independent must
// admit an X ⊆ B \ A of size at most k with (B \ X) ∪ {u} independent.
// Candidates u in B \ A are skipped: removing u itself always qualifies,
// so that reading of the axiom is vacuous.
AxiomReport verify_k_extendible(const IndependenceSystem& sys, int k);

// Constraint description sub-schema of the instance file.
std::shared_ptr<const IndependenceSystem> build_constraint(
    const nlohmann::json& desc, int n);
nlohmann::json constraint_to_json(const IndependenceSystem& sys);

}  // namespace submax
