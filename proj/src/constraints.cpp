#include "submax/constraints.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

#include "submax/errors.hpp"

namespace submax {

namespace {

void check_universe(const IndependenceSystem& sys, const ElementSet& s) {
  if (s.universe_size() != sys.ground_size()) {
    throw DomainError("set over ground set of size " +
                      std::to_string(s.universe_size()) +
                      " passed to a system over " +
                      std::to_string(sys.ground_size()) + " elements");
  }
}

// All masks over [0, n), ordered by size then by position.
std::vector<std::uint32_t> subsets_in_order(int n) {
  std::vector<std::uint32_t> order;
  order.reserve(1u << n);
  for (std::uint32_t m = 0; m < (1u << n); ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     const int pa = std::popcount(a);
                     const int pb = std::popcount(b);
                     if (pa != pb) return pa < pb;
                     return a < b;
                   });
  return order;
}

std::vector<char> independence_table(const IndependenceSystem& sys, int n) {
  std::vector<char> indep(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    indep[m] = sys.is_independent(ElementSet::from_mask(n, m)) ? 1 : 0;
  }
  return indep;
}

}  // namespace

bool IndependenceSystem::can_extend(const ElementSet& s, int u) const {
  if (s.contains(u)) {
    throw DomainError("can_extend called with u already in S");
  }
  return is_independent(s.with(u));
}

// ---------------------------------------------------------------------------
// UniformMatroid

namespace {

class UniformState final : public FeasibilityState {
 public:
  UniformState(int capacity) : capacity_(capacity) {}
  bool can_add(int) const override { return count_ + 1 <= capacity_; }
  void add(int) override { ++count_; }
  std::unique_ptr<FeasibilityState> clone() const override {
    return std::make_unique<UniformState>(*this);
  }

 private:
  int capacity_;
  int count_ = 0;
};

}  // namespace

UniformMatroid::UniformMatroid(int n, int capacity)
    : n_(n), capacity_(capacity) {
  if (n < 0) throw ValidationError("uniform: n must be non-negative");
  if (capacity < 0) throw ValidationError("uniform: r must be non-negative");
}

bool UniformMatroid::is_independent(const ElementSet& s) const {
  check_universe(*this, s);
  return s.size() <= capacity_;
}

std::unique_ptr<FeasibilityState> UniformMatroid::new_state() const {
  return std::make_unique<UniformState>(capacity_);
}

std::string UniformMatroid::describe() const {
  return "uniform(r=" + std::to_string(capacity_) + ")";
}

// ---------------------------------------------------------------------------
// PartitionMatroid

namespace {

class PartitionState final : public FeasibilityState {
 public:
  PartitionState(const PartitionMatroid* m)
      : matroid_(m), counts_(m->blocks().size(), 0) {}
  bool can_add(int u) const override {
    const int b = matroid_->block_of(u);
    return counts_[static_cast<std::size_t>(b)] + 1 <=
           matroid_->blocks()[static_cast<std::size_t>(b)].capacity;
  }
  void add(int u) override {
    ++counts_[static_cast<std::size_t>(matroid_->block_of(u))];
  }
  std::unique_ptr<FeasibilityState> clone() const override {
    return std::make_unique<PartitionState>(*this);
  }

 private:
  const PartitionMatroid* matroid_;
  std::vector<int> counts_;
};

}  // namespace

PartitionMatroid::PartitionMatroid(int n, std::vector<Block> blocks)
    : n_(n), blocks_(std::move(blocks)), block_of_(static_cast<std::size_t>(n), -1) {
  if (n < 0) throw ValidationError("partition: n must be non-negative");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].capacity < 0) {
      throw ValidationError("partition: blocks[" + std::to_string(b) +
                            "].capacity must be non-negative");
    }
    for (int u : blocks_[b].members) {
      if (u < 0 || u >= n) {
        throw ValidationError("partition: blocks[" + std::to_string(b) +
                              "] member " + std::to_string(u) +
                              " outside [0, " + std::to_string(n) + ")");
      }
      if (block_of_[static_cast<std::size_t>(u)] != -1) {
        throw ValidationError("partition: blocks overlap at " +
                              std::to_string(u));
      }
      block_of_[static_cast<std::size_t>(u)] = static_cast<int>(b);
    }
  }
  for (int u = 0; u < n; ++u) {
    if (block_of_[static_cast<std::size_t>(u)] == -1) {
      throw ValidationError("partition: element " + std::to_string(u) +
                            " not covered by any block");
    }
  }
}

bool PartitionMatroid::is_independent(const ElementSet& s) const {
  check_universe(*this, s);
  std::vector<int> counts(blocks_.size(), 0);
  bool ok = true;
  s.for_each([&](int u) {
    const std::size_t b = static_cast<std::size_t>(block_of_[static_cast<std::size_t>(u)]);
    if (++counts[b] > blocks_[b].capacity) ok = false;
  });
  return ok;
}

int PartitionMatroid::rank_upper_bound() const {
  int total = 0;
  for (const Block& b : blocks_) total += b.capacity;
  return total;
}

std::unique_ptr<FeasibilityState> PartitionMatroid::new_state() const {
  return std::make_unique<PartitionState>(this);
}

std::string PartitionMatroid::describe() const {
  return "partition(" + std::to_string(blocks_.size()) + " blocks)";
}

// ---------------------------------------------------------------------------
// IntersectionSystem

namespace {

class IntersectionState final : public FeasibilityState {
 public:
  explicit IntersectionState(std::vector<std::unique_ptr<FeasibilityState>> parts)
      : parts_(std::move(parts)) {}
  IntersectionState(const IntersectionState& other) {
    parts_.reserve(other.parts_.size());
    for (const auto& p : other.parts_) parts_.push_back(p->clone());
  }
  bool can_add(int u) const override {
    for (const auto& p : parts_) {
      if (!p->can_add(u)) return false;
    }
    return true;
  }
  void add(int u) override {
    for (auto& p : parts_) p->add(u);
  }
  std::unique_ptr<FeasibilityState> clone() const override {
    return std::make_unique<IntersectionState>(*this);
  }

 private:
  std::vector<std::unique_ptr<FeasibilityState>> parts_;
};

}  // namespace

IntersectionSystem::IntersectionSystem(
    std::vector<std::shared_ptr<const IndependenceSystem>> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw DomainError("intersection requires at least one member");
  }
  const int n = members_.front()->ground_size();
  for (const auto& m : members_) {
    if (m->ground_size() != n) {
      throw DomainError("intersection members disagree on ground-set size");
    }
  }
}

int IntersectionSystem::ground_size() const {
  return members_.front()->ground_size();
}

bool IntersectionSystem::is_independent(const ElementSet& s) const {
  check_universe(*this, s);
  for (const auto& m : members_) {
    if (!m->is_independent(s)) return false;
  }
  return true;
}

int IntersectionSystem::rank_upper_bound() const {
  int best = members_.front()->rank_upper_bound();
  for (const auto& m : members_) {
    best = std::min(best, m->rank_upper_bound());
  }
  return best;
}

std::unique_ptr<FeasibilityState> IntersectionSystem::new_state() const {
  std::vector<std::unique_ptr<FeasibilityState>> parts;
  parts.reserve(members_.size());
  for (const auto& m : members_) parts.push_back(m->new_state());
  return std::make_unique<IntersectionState>(std::move(parts));
}

std::string IntersectionSystem::describe() const {
  return "intersection(k=" + std::to_string(members_.size()) + ")";
}

std::shared_ptr<const IndependenceSystem> intersect(
    std::vector<std::shared_ptr<const IndependenceSystem>> members) {
  return std::make_shared<IntersectionSystem>(std::move(members));
}

// ---------------------------------------------------------------------------
// Axiom verifiers

std::string AxiomCounterexample::to_string() const {
  std::ostringstream out;
  out << axiom << ": A=" << a.to_string() << " B=" << b.to_string();
  if (element) out << " u=" << *element;
  return out.str();
}

AxiomReport verify_matroid_axioms(const IndependenceSystem& sys) {
  const int n = sys.ground_size();
  if (n > 14) {
    throw CapacityError("verify_matroid_axioms enumerates exhaustively and "
                        "supports n <= 14, got n=" + std::to_string(n));
  }
  const std::vector<char> indep = independence_table(sys, n);
  const std::vector<std::uint32_t> order = subsets_in_order(n);

  AxiomReport report;
  auto fail = [&](std::string axiom, std::uint32_t a, std::uint32_t b,
                  std::optional<int> u) {
    report.passed = false;
    report.counterexample = AxiomCounterexample{
        std::move(axiom), ElementSet::from_mask(n, a),
        ElementSet::from_mask(n, b), u};
  };

  ++report.checks_performed;
  if (!indep[0]) {
    fail("empty-set", 0, 0, std::nullopt);
    return report;
  }

  // Downward closure via single deletions; covers all subsets by induction.
  for (std::uint32_t m : order) {
    if (!indep[m]) continue;
    std::uint32_t rest = m;
    while (rest != 0) {
      const int u = std::countr_zero(rest);
      rest &= rest - 1;
      ++report.checks_performed;
      const std::uint32_t sub = m & ~(1u << u);
      if (!indep[sub]) {
        fail("downward-closure", sub, m, u);
        return report;
      }
    }
  }

  // Exchange: every independent pair with |A| < |B| admits an augmenting u.
  std::vector<std::uint32_t> indep_masks;
  for (std::uint32_t m : order) {
    if (indep[m]) indep_masks.push_back(m);
  }
  for (std::uint32_t a : indep_masks) {
    const int size_a = std::popcount(a);
    for (std::uint32_t b : indep_masks) {
      if (std::popcount(b) <= size_a) continue;
      ++report.checks_performed;
      std::uint32_t candidates = b & ~a;
      bool found = false;
      while (candidates != 0) {
        const int u = std::countr_zero(candidates);
        candidates &= candidates - 1;
        if (indep[a | (1u << u)]) {
          found = true;
          break;
        }
      }
      if (!found) {
        fail("exchange", a, b, std::nullopt);
        return report;
      }
    }
  }
  return report;
}

AxiomReport verify_k_extendible(const IndependenceSystem& sys, int k) {
  const int n = sys.ground_size();
  if (n > 12) {
    throw CapacityError("verify_k_extendible enumerates exhaustively and "
                        "supports n <= 12, got n=" + std::to_string(n));
  }
  if (k < 0) throw ConfigError("k must be non-negative");
  const std::vector<char> indep = independence_table(sys, n);
  const std::vector<std::uint32_t> order = subsets_in_order(n);
  std::vector<std::uint32_t> indep_masks;
  for (std::uint32_t m : order) {
    if (indep[m]) indep_masks.push_back(m);
  }

  AxiomReport report;
  for (std::uint32_t a : indep_masks) {
    for (std::uint32_t b : indep_masks) {
      if (b == a || (b & a) != a) continue;  // B must strictly extend A
      const std::uint32_t removable = b & ~a;
      for (int u = 0; u < n; ++u) {
        const std::uint32_t bit = 1u << u;
        if ((b & bit) != 0) continue;   // u in B (or A): vacuous reading
        if (!indep[a | bit]) continue;  // A ∪ {u} must be independent
        ++report.checks_performed;
        if (indep[b | bit]) continue;  // X = ∅ qualifies
        bool found = false;
        for (std::uint32_t x = removable; x != 0 && !found;
             x = (x - 1) & removable) {
          if (std::popcount(x) <= k && indep[(b & ~x) | bit]) found = true;
        }
        if (!found) {
          report.passed = false;
          report.counterexample = AxiomCounterexample{
              "k-extendible", ElementSet::from_mask(n, a),
              ElementSet::from_mask(n, b), u};
          return report;
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// JSON schema

std::shared_ptr<const IndependenceSystem> build_constraint(
    const nlohmann::json& desc, int n) {
  if (!desc.is_object() || !desc.contains("kind") ||
      !desc["kind"].is_string()) {
    throw ValidationError("constraint: missing string field \"kind\"");
  }
  const std::string kind = desc["kind"].get<std::string>();
  if (kind == "uniform") {
    if (!desc.contains("r") || !desc["r"].is_number_integer()) {
      throw ValidationError("constraint: uniform requires integer field \"r\"");
    }
    return std::make_shared<UniformMatroid>(n, desc["r"].get<int>());
  }
  if (kind == "partition") {
    if (!desc.contains("blocks") || !desc["blocks"].is_array()) {
      throw ValidationError(
          "constraint: partition requires array field \"blocks\"");
    }
    std::vector<PartitionMatroid::Block> blocks;
    std::size_t i = 0;
    for (const auto& item : desc["blocks"]) {
      const std::string where = "blocks[" + std::to_string(i) + "]";
      if (!item.is_object() || !item.contains("members") ||
          !item["members"].is_array() || !item.contains("capacity") ||
          !item["capacity"].is_number_integer()) {
        throw ValidationError("constraint: " + where +
                              " needs \"members\" array and integer "
                              "\"capacity\"");
      }
      PartitionMatroid::Block block;
      block.capacity = item["capacity"].get<int>();
      for (const auto& member : item["members"]) {
        if (!member.is_number_integer()) {
          throw ValidationError("constraint: " + where +
                                ".members must hold integers");
        }
        block.members.push_back(member.get<int>());
      }
      blocks.push_back(std::move(block));
      ++i;
    }
    return std::make_shared<PartitionMatroid>(n, std::move(blocks));
  }
  if (kind == "intersection") {
    if (!desc.contains("members") || !desc["members"].is_array() ||
        desc["members"].empty()) {
      throw ValidationError(
          "constraint: intersection requires non-empty array \"members\"");
    }
    std::vector<std::shared_ptr<const IndependenceSystem>> members;
    for (const auto& sub : desc["members"]) {
      members.push_back(build_constraint(sub, n));
    }
    return intersect(std::move(members));
  }
  throw ValidationError("constraint: unknown kind \"" + kind + "\"");
}

nlohmann::json constraint_to_json(const IndependenceSystem& sys) {
  if (const auto* u = dynamic_cast<const UniformMatroid*>(&sys)) {
    return {{"kind", "uniform"}, {"r", u->capacity()}};
  }
  if (const auto* p = dynamic_cast<const PartitionMatroid*>(&sys)) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : p->blocks()) {
      blocks.push_back({{"members", b.members}, {"capacity", b.capacity}});
    }
    return {{"kind", "partition"}, {"blocks", std::move(blocks)}};
  }
  if (const auto* ix = dynamic_cast<const IntersectionSystem*>(&sys)) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : ix->members()) {
      members.push_back(constraint_to_json(*m));
    }
    return {{"kind", "intersection"}, {"members", std::move(members)}};
  }
  throw DomainError("constraint kind has no JSON form");
}

}  // namespace submax
