#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "submax/constraints.hpp"
#include "submax/objectives.hpp"

namespace submax {

// Serializable description of (ground set, objective, constraint). The
// JSON descriptions are kept verbatim so a load/write round trip is
// exact; oracles and systems are built on demand.
struct InstanceSpec {
  std::string name;
  int n = 0;
  nlohmann::json objective;
  nlohmann::json constraint;
  // Optional display names, one per element; ids in the file stay dense.
  std::vector<std::string> labels;
  std::optional<double> opt_value;
  std::optional<std::string> opt_provenance;

  std::unique_ptr<ValueOracle> build_oracle() const;
  std::shared_ptr<const IndependenceSystem> build_system() const;
  nlohmann::json to_json() const;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

InstanceSpec parse_instance(const nlohmann::json& doc);
InstanceSpec load_instance(const std::filesystem::path& path);
void write_instance(const InstanceSpec& spec,
                    const std::filesystem::path& path);

// Synthetic families. The constraint is an intersection of `k` random
// partition matroids (a single matroid when k = 1), each with `blocks`
// blocks of the given capacity, so the rank bound is blocks * capacity.
struct GenSpec {
  std::string family;  // random-modular | random-coverage |
                       // random-facility-location | random-cut
  int n = 0;
  std::uint64_t seed = 0;
  int k = 2;
  int blocks = 0;    // 0: max(2, n/4)
  int capacity = 1;
  int universe = 0;  // coverage only; 0: 3n
  double density = 0.3;
  int clients = 0;  // facility location only; 0: n
  std::string name;  // optional; derived from the parameters when empty
};

struct GeneratedComponents {
  std::unique_ptr<ValueOracle> oracle;
  std::shared_ptr<const IndependenceSystem> system;
};

// Reproducible for a fixed (family, parameters, seed) triple.
InstanceSpec generate_instance(const GenSpec& spec);

// Same generation without the JSON round trip; used for large instances.
GeneratedComponents generate_components(const GenSpec& spec);

// Small deterministic instances covering every shipped constraint and
// objective kind; the verify command and the acceptance suite run the
// definition checkers over these.
std::vector<InstanceSpec> builtin_verification_corpus();

}  // namespace submax
