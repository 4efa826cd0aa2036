#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "epr/instance.hpp"
#include "epr/rational.hpp"

namespace epr {

using VertexPair = std::pair<int, int>;  // first < second

inline VertexPair make_pair_key(int u, int v) { return u < v ? VertexPair{u, v} : VertexPair{v, u}; }

enum class Arithmetic { floating, exact };

// Half-integral fractional matching, values stored in halves (1 = 1/2, 2 = 1).
struct HalfIntegralVector {
  int num_vertices = 0;
  std::map<VertexPair, int> halves;  // nonzero entries only

  double value(int u, int v) const;
};

// Optimal LP solution in matching-plus-odd-cycles form.
struct HalfIntegralSolution {
  int num_vertices = 0;
  HalfIntegralVector x;
  std::vector<VertexPair> matching;
  std::vector<std::vector<int>> cycles;  // cyclic order, starts at the smallest vertex
  std::vector<int> unmatched;
  double lp_value = 0.0;
  std::optional<Rational> exact_lp_value;  // set when solved in exact arithmetic

  double x_value(int u, int v) const { return x.value(u, v); }
  bool in_matching(int u, int v) const;
  // Index of the cycle containing edge {u, v} as a cycle edge, or -1.
  int cycle_of_edge(int u, int v) const;

  nlohmann::json to_json() const;
};

// Raw optimum from the bipartite double cover: x_uv = (m(u',v'') + m(v',u''))/2.
HalfIntegralVector double_cover_solution(const WeightedGraph& g, Arithmetic arithmetic = Arithmetic::floating);

// Rerounds even cycles and paths of half-edges to the heavier alternation
// class; keeps odd cycles. Throws InputError on an infeasible input.
HalfIntegralSolution normalize(const WeightedGraph& g, const HalfIntegralVector& raw,
                               Arithmetic arithmetic = Arithmetic::floating);

HalfIntegralSolution solve_lp(const WeightedGraph& g, Arithmetic arithmetic = Arithmetic::floating);

// E~_ij = (1 + x_ij)/2: 1 on M, 3/4 on cycle edges, 1/2 elsewhere.
class LpEnergies {
 public:
  explicit LpEnergies(const HalfIntegralSolution& s) : x_(s.x) {}

  double energy(int u, int v) const { return 0.5 * (1.0 + x_.value(u, v)); }
  double weighted_total(const WeightedGraph& g) const;

 private:
  HalfIntegralVector x_;
};

inline LpEnergies lp_energies(const HalfIntegralSolution& s) { return LpEnergies(s); }

// (sum w + LP(w)) / 2.
double upper_bound(const WeightedGraph& g, const HalfIntegralSolution& s);
std::optional<Rational> exact_upper_bound(const WeightedGraph& g, const HalfIntegralSolution& s);

// sum_j max(0, 2 e_j - 1) over the energies of edges at one vertex.
double star_bound_sum(std::span<const double> energies);
bool star_bound_check(std::span<const double> energies, double tolerance = 1e-9);

// Per-vertex sums of x must not exceed 1.
bool is_feasible(const WeightedGraph& g, const HalfIntegralVector& x);

}  // namespace epr
