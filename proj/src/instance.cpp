#include "submax/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "submax/errors.hpp"
#include "submax/rng.hpp"

namespace submax {

std::unique_ptr<ValueOracle> InstanceSpec::build_oracle() const {
  return build_objective(objective);
}

std::shared_ptr<const IndependenceSystem> InstanceSpec::build_system() const {
  return build_constraint(constraint, n);
}

nlohmann::json InstanceSpec::to_json() const {
  nlohmann::json doc;
  doc["name"] = name;
  doc["n"] = n;
  doc["objective"] = objective;
  doc["constraint"] = constraint;
  if (!labels.empty()) doc["labels"] = labels;
  if (opt_value) doc["opt_value"] = *opt_value;
  if (opt_provenance) doc["opt_provenance"] = *opt_provenance;
  return doc;
}

InstanceSpec parse_instance(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("instance: top-level document must be an object");
  }
  InstanceSpec spec;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      throw ValidationError("instance: \"name\" must be a string");
    }
    spec.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ValidationError("instance: missing integer field \"n\"");
  }
  spec.n = doc["n"].get<int>();
  if (spec.n < 0) throw ValidationError("instance: \"n\" must be >= 0");
  if (!doc.contains("objective")) {
    throw ValidationError("instance: missing field \"objective\"");
  }
  if (!doc.contains("constraint")) {
    throw ValidationError("instance: missing field \"constraint\"");
  }
  spec.objective = doc["objective"];
  spec.constraint = doc["constraint"];

  // Build both components now so every schema and value error surfaces
  // at load time with the offending field named.
  const auto oracle = spec.build_oracle();
  if (oracle->ground_size() != spec.n) {
    throw ValidationError("objective implies n=" +
                          std::to_string(oracle->ground_size()) +
                          " but the instance declares n=" +
                          std::to_string(spec.n));
  }
  spec.build_system();

  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() ||
        static_cast<int>(doc["labels"].size()) != spec.n) {
      throw ValidationError(
          "instance: \"labels\" must list one string per element (n=" +
          std::to_string(spec.n) + ")");
    }
    for (const auto& label : doc["labels"]) {
      if (!label.is_string()) {
        throw ValidationError("instance: \"labels\" entries must be strings");
      }
      spec.labels.push_back(label.get<std::string>());
    }
  }

  if (doc.contains("opt_value")) {
    if (!doc["opt_value"].is_number()) {
      throw ValidationError("instance: \"opt_value\" must be a number");
    }
    spec.opt_value = doc["opt_value"].get<double>();
    if (!doc.contains("opt_provenance") ||
        doc["opt_provenance"] != "brute_force_opt") {
      throw ValidationError(
          "instance: \"opt_value\" requires opt_provenance=\"brute_force_opt\"");
    }
    spec.opt_provenance = doc["opt_provenance"].get<std::string>();
  }
  return spec;
}

InstanceSpec load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open instance file: " + path.string());
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("instance parse error: " + std::string(e.what()));
  }
  return parse_instance(doc);
}

void write_instance(const InstanceSpec& spec,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write instance file: " + path.string());
  }
  out << spec.to_json().dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Generators

namespace {

std::shared_ptr<const IndependenceSystem> generate_constraint(
    const GenSpec& spec, Rng& rng) {
  const int blocks = spec.blocks > 0 ? spec.blocks : std::max(2, spec.n / 4);
  std::vector<std::shared_ptr<const IndependenceSystem>> members;
  members.reserve(static_cast<std::size_t>(spec.k));
  for (int m = 0; m < spec.k; ++m) {
    std::vector<PartitionMatroid::Block> parts(
        static_cast<std::size_t>(blocks));
    for (auto& block : parts) block.capacity = spec.capacity;
    for (int u = 0; u < spec.n; ++u) {
      parts[static_cast<std::size_t>(rng.next_below(blocks))]
          .members.push_back(u);
    }
    members.push_back(
        std::make_shared<PartitionMatroid>(spec.n, std::move(parts)));
  }
  if (members.size() == 1) return members.front();
  return intersect(std::move(members));
}

std::unique_ptr<ValueOracle> generate_objective(const GenSpec& spec,
                                                Rng& rng) {
  if (spec.family == "random-modular") {
    std::vector<double> weights(static_cast<std::size_t>(spec.n));
    for (double& w : weights) w = 10.0 * rng.next_double();
    return make_modular(std::move(weights));
  }
  if (spec.family == "random-coverage") {
    const int universe = spec.universe > 0 ? spec.universe : 3 * spec.n;
    if (universe <= 0) {
      throw ConfigError("random-coverage needs a positive universe");
    }
    std::vector<double> item_weights(static_cast<std::size_t>(universe));
    for (double& w : item_weights) w = 0.1 + rng.next_double();
    // Cover sizes are uniform on [1, 2c-1] with c = density * universe,
    // so the expected size is c and every cover is non-empty.
    const int mean_cover = std::max(
        1, static_cast<int>(spec.density * static_cast<double>(universe)));
    const int size_span = std::min(2 * mean_cover - 1, universe);
    std::vector<std::vector<int>> covers(static_cast<std::size_t>(spec.n));
    for (auto& cover : covers) {
      const int size = 1 + (size_span > 1 ? rng.next_below(size_span) : 0);
      while (static_cast<int>(cover.size()) < size) {
        const int item = rng.next_below(universe);
        if (std::find(cover.begin(), cover.end(), item) == cover.end()) {
          cover.push_back(item);
        }
      }
      std::sort(cover.begin(), cover.end());
    }
    return make_coverage(std::move(item_weights), std::move(covers));
  }
  if (spec.family == "random-facility-location") {
    const int clients = spec.clients > 0 ? spec.clients : spec.n;
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(clients));
    for (auto& row : rows) {
      row.resize(static_cast<std::size_t>(spec.n));
      for (double& w : row) w = rng.next_double();
    }
    return make_facility_location(std::move(rows));
  }
  if (spec.family == "random-cut") {
    std::vector<GraphEdge> edges;
    for (int a = 0; a < spec.n; ++a) {
      for (int b = a + 1; b < spec.n; ++b) {
        if (rng.bernoulli(spec.density)) {
          edges.push_back(GraphEdge{a, b, 0.1 + rng.next_double()});
        }
      }
    }
    if (edges.empty() && spec.n >= 2) {
      edges.push_back(GraphEdge{0, 1, 1.0});
    }
    return make_graph_cut(spec.n, std::move(edges));
  }
  throw ConfigError("unknown instance family \"" + spec.family + "\"");
}

void validate_genspec(const GenSpec& spec) {
  if (spec.n < 0) throw ConfigError("n must be >= 0");
  if (spec.k < 1) throw ConfigError("k must be >= 1");
  if (spec.capacity < 1) throw ConfigError("capacity must be >= 1");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    throw ConfigError("density must lie in (0, 1]");
  }
}

}  // namespace

GeneratedComponents generate_components(const GenSpec& spec) {
  validate_genspec(spec);
  // Separate sub-streams: the objective does not depend on constraint
  // parameters and vice versa.
  Rng constraint_rng(spec.seed, 1);
  Rng objective_rng(spec.seed, 2);
  GeneratedComponents out;
  out.system = generate_constraint(spec, constraint_rng);
  out.oracle = generate_objective(spec, objective_rng);
  return out;
}

InstanceSpec generate_instance(const GenSpec& spec) {
  GeneratedComponents parts = generate_components(spec);
  InstanceSpec out;
  out.n = spec.n;
  if (!spec.name.empty()) {
    out.name = spec.name;
  } else {
    std::ostringstream name;
    name << spec.family << "-n" << spec.n << "-k" << spec.k << "-s"
         << spec.seed;
    out.name = name.str();
  }
  out.objective = objective_to_json(*parts.oracle);
  out.constraint = constraint_to_json(*parts.system);
  return out;
}

// ---------------------------------------------------------------------------
// Built-in corpus

namespace {

InstanceSpec make_spec(std::string name, int n, nlohmann::json objective,
                       nlohmann::json constraint) {
  InstanceSpec spec;
  spec.name = std::move(name);
  spec.n = n;
  spec.objective = std::move(objective);
  spec.constraint = std::move(constraint);
  return spec;
}

}  // namespace

std::vector<InstanceSpec> builtin_verification_corpus() {
  std::vector<InstanceSpec> corpus;

  corpus.push_back(make_spec(
      "corpus-modular-uniform", 6,
      {{"kind", "modular"}, {"weights", {9.0, 7.0, 5.0, 3.0, 2.0, 1.0}}},
      {{"kind", "uniform"}, {"r", 3}}));

  corpus.push_back(make_spec(
      "corpus-coverage-partition", 8,
      {{"kind", "coverage"},
       {"universe_weights", {1.0, 1.0, 1.0, 2.0, 2.0, 1.0, 1.0, 3.0, 1.0, 2.0}},
       {"covers",
        nlohmann::json::array({{0, 1},
                               {1, 2, 3},
                               {4},
                               {4, 5, 6},
                               {7},
                               {7, 8},
                               {0, 9},
                               {3, 9}})}},
      {{"kind", "partition"},
       {"blocks",
        nlohmann::json::array(
            {{{"members", {0, 1, 2, 3}}, {"capacity", 2}},
             {{"members", {4, 5, 6, 7}}, {"capacity", 1}}})}}));

  corpus.push_back(make_spec(
      "corpus-facility-intersection", 6,
      {{"kind", "facility_location"},
       {"weights",
        nlohmann::json::array({{3.0, 1.0, 0.0, 2.0, 5.0, 1.0},
                               {0.0, 2.0, 4.0, 1.0, 1.0, 3.0},
                               {2.0, 0.0, 1.0, 3.0, 2.0, 0.0},
                               {1.0, 4.0, 2.0, 0.0, 3.0, 2.0},
                               {5.0, 1.0, 3.0, 2.0, 0.0, 4.0}})}},
      {{"kind", "intersection"},
       {"members",
        nlohmann::json::array(
            {{{"kind", "partition"},
              {"blocks",
               nlohmann::json::array(
                   {{{"members", {0, 1, 2}}, {"capacity", 1}},
                    {{"members", {3, 4, 5}}, {"capacity", 2}}})}},
             {{"kind", "partition"},
              {"blocks",
               nlohmann::json::array(
                   {{{"members", {0, 3}}, {"capacity", 1}},
                    {{"members", {1, 4}}, {"capacity", 1}},
                    {{"members", {2, 5}}, {"capacity", 1}}})}}})}}));

  corpus.push_back(make_spec(
      "corpus-cut-intersection", 8,
      {{"kind", "graph_cut"},
       {"n", 8},
       {"edges",
        nlohmann::json::array({{0, 1, 2.0},
                               {0, 2, 3.0},
                               {1, 3, 1.0},
                               {2, 3, 4.0},
                               {3, 4, 2.0},
                               {4, 5, 3.0},
                               {5, 6, 1.0},
                               {6, 7, 5.0},
                               {4, 7, 2.0},
                               {1, 6, 3.0},
                               {2, 5, 2.0},
                               {0, 7, 1.0}})}},
      {{"kind", "intersection"},
       {"members",
        nlohmann::json::array(
            {{{"kind", "partition"},
              {"blocks",
               nlohmann::json::array(
                   {{{"members", {0, 1}}, {"capacity", 1}},
                    {{"members", {2, 3}}, {"capacity", 1}},
                    {{"members", {4, 5}}, {"capacity", 1}},
                    {{"members", {6, 7}}, {"capacity", 1}}})}},
             {{"kind", "partition"},
              {"blocks",
               nlohmann::json::array(
                   {{{"members", {0, 2}}, {"capacity", 1}},
                    {{"members", {1, 3}}, {"capacity", 1}},
                    {{"members", {4, 6}}, {"capacity", 1}},
                    {{"members", {5, 7}}, {"capacity", 1}}})}}})}}));

  // A triangle rather than a bare path: with the path, the random-subset
  // lemma is exactly tight around the optimum (E[h(S)] = (1-p) h(∅)), so
  // the three-sigma certificate could never pass on it.
  corpus.push_back(make_spec(
      "corpus-cut-triangle", 3,
      {{"kind", "graph_cut"},
       {"n", 3},
       {"edges",
        nlohmann::json::array({{0, 1, 5.0}, {1, 2, 4.0}, {0, 2, 2.0}})}},
      {{"kind", "uniform"}, {"r", 3}}));

  corpus.push_back(make_spec(
      "corpus-modular-triple-uniform", 6,
      {{"kind", "modular"}, {"weights", {8.0, 6.0, 6.0, 4.0, 2.0, 1.0}}},
      {{"kind", "intersection"},
       {"members",
        nlohmann::json::array({{{"kind", "uniform"}, {"r", 2}},
                               {{"kind", "uniform"}, {"r", 3}},
                               {{"kind", "uniform"}, {"r", 4}}})}}));

  return corpus;
}

}  // namespace submax
