#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epr/rational.hpp"

namespace epr {

struct Edge {
  int u = 0;  // u < v
  int v = 0;
  double weight = 0.0;
  Rational exact_weight;
};

// Symmetric nonnegative interaction matrix stored as a canonical edge list:
// edges sorted by (u, v), u < v, no duplicates, strictly positive weights.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Validates and canonicalizes. Zero-weight edges are dropped.
  WeightedGraph(int num_vertices, std::vector<Edge> edges);

  static WeightedGraph from_weights(int num_vertices,
                                    const std::vector<std::tuple<int, int, double>>& edges);

  int num_vertices() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  double total_weight() const;
  Rational exact_total_weight() const;

  // Weight of {u, v}, or nullopt when the pair is not an edge.
  std::optional<double> weight(int u, int v) const;
  const Edge* find_edge(int u, int v) const;

  std::vector<std::vector<int>> adjacency() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

struct Bipartition {
  std::vector<int> side_a;
  std::vector<int> side_b;
};

// Qubits whose local frame is conjugated by Pauli Y (QMC <-> EPR).
struct QubitFrame {
  std::vector<int> y_conjugated;  // sorted

  bool contains(int qubit) const;
};

struct QmcReduction {
  WeightedGraph graph;
  QubitFrame frame;
};

// BFS 2-coloring of the support graph; isolated vertices go to side A.
std::optional<Bipartition> detect_bipartition(const WeightedGraph& g);

bool is_valid_bipartition(const WeightedGraph& g, const Bipartition& b);

// Bipartite QMC is EPR after Y-conjugating side A. Throws InputError when b
// is not a valid bipartition of g.
QmcReduction qmc_to_epr(const WeightedGraph& g, const Bipartition& b);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

enum class InstanceFormat { edgelist, json };

InstanceFormat parse_instance_format(const std::string& name);

// Edge-list text: first non-comment line "n", then "i j w" per line; '#'
// starts a comment line. Weights may be decimal or "p/q".
WeightedGraph parse_edgelist(std::istream& in);
WeightedGraph parse_instance_json(std::istream& in);

WeightedGraph load_instance(const std::filesystem::path& path,
                            std::optional<InstanceFormat> format = std::nullopt);

void write_edgelist(std::ostream& out, const WeightedGraph& g);
void write_instance_json(std::ostream& out, const WeightedGraph& g);
void save_instance(const std::filesystem::path& path, const WeightedGraph& g,
                   InstanceFormat format = InstanceFormat::edgelist);

// ---------------------------------------------------------------------------
// Generators (deterministic for a fixed seed)
// ---------------------------------------------------------------------------

enum class Family { random_gnp, cycle, complete, bipartite_random, star };

Family parse_family(const std::string& name);
std::string to_string(Family family);

struct WeightSpec {
  enum class Kind { unit, uniform, integer };
  Kind kind = Kind::unit;
  double low = 0.1;   // uniform
  double high = 1.0;  // uniform
  int max_integer = 5;  // integer weights drawn from {1, ..., max_integer}

  static WeightSpec parse(const std::string& text);  // "unit", "uniform:lo:hi", "int:W"
};

struct GeneratorParams {
  // random_gnp / complete: vertex count; cycle: length; star: leaf count;
  // bipartite_random: size of side A.
  int size = 0;
  int size_b = 0;   // bipartite_random: size of side B
  double p = 0.5;   // edge probability for random families
  WeightSpec weights;
  std::uint64_t seed = 1;
};

WeightedGraph generate(Family family, const GeneratorParams& params);

}  // namespace epr
