#include "epr/fractional_matching.hpp"

#include <algorithm>

#include "epr/errors.hpp"
#include "epr/hungarian.hpp"

namespace epr {

double HalfIntegralVector::value(int u, int v) const {
  auto it = halves.find(make_pair_key(u, v));
  return it == halves.end() ? 0.0 : 0.5 * it->second;
}

bool HalfIntegralSolution::in_matching(int u, int v) const {
  auto key = make_pair_key(u, v);
  return std::find(matching.begin(), matching.end(), key) != matching.end();
}

int HalfIntegralSolution::cycle_of_edge(int u, int v) const {
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const auto& cycle = cycles[c];
    const std::size_t k = cycle.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (make_pair_key(cycle[i], cycle[(i + 1) % k]) == make_pair_key(u, v)) return static_cast<int>(c);
    }
  }
  return -1;
}

nlohmann::json HalfIntegralSolution::to_json() const {
  nlohmann::json doc;
  doc["n"] = num_vertices;
  doc["lp_value"] = lp_value;
  if (exact_lp_value) doc["lp_value_exact"] = to_string(*exact_lp_value);
  doc["matching"] = nlohmann::json::array();
  for (const auto& [u, v] : matching) doc["matching"].push_back({u, v});
  doc["cycles"] = cycles;
  doc["unmatched"] = unmatched;
  nlohmann::json x = nlohmann::json::array();
  for (const auto& [key, h] : this->x.halves) x.push_back({key.first, key.second, 0.5 * h});
  doc["x"] = std::move(x);
  return doc;
}

namespace {

template <class Scalar>
Scalar edge_weight(const Edge& e) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return e.exact_weight;
  } else {
    return e.weight;
  }
}

template <class Scalar>
HalfIntegralVector double_cover(const WeightedGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<Scalar>> weight(n, std::vector<Scalar>(n, Scalar(0)));
  for (const Edge& e : g.edges()) {
    weight[e.u][e.v] = edge_weight<Scalar>(e);
    weight[e.v][e.u] = edge_weight<Scalar>(e);
  }
  const auto column_of_row = max_weight_assignment(weight);
  HalfIntegralVector x;
  x.num_vertices = n;
  for (int u = 0; u < n; ++u) {
    const int v = column_of_row[u];
    if (v < 0 || u == v || !(weight[u][v] > Scalar(0))) continue;
    x.halves[make_pair_key(u, v)] += 1;
  }
  return x;
}

// Half-edges form vertex-disjoint paths and cycles; walks one component.
std::vector<int> walk(int start, const std::vector<std::vector<int>>& half_adj, std::vector<char>& seen) {
  std::vector<int> order{start};
  seen[start] = 1;
  int prev = -1;
  int cur = start;
  while (true) {
    int next = -1;
    for (int nb : half_adj[cur]) {
      if (nb != prev && !seen[nb]) {
        next = nb;
        break;
      }
    }
    if (next < 0) break;
    seen[next] = 1;
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

template <class Scalar>
void reround_alternating(const WeightedGraph& g, const std::vector<VertexPair>& edges,
                         std::vector<VertexPair>& matching) {
  Scalar class_weight[2] = {Scalar(0), Scalar(0)};
  VertexPair smallest[2] = {edges[0], edges[std::min<std::size_t>(1, edges.size() - 1)]};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    class_weight[i % 2] += edge_weight<Scalar>(*g.find_edge(edges[i].first, edges[i].second));
    smallest[i % 2] = std::min(smallest[i % 2], edges[i]);
  }
  int chosen = 0;
  if (edges.size() > 1) {
    if (class_weight[1] > class_weight[0]) {
      chosen = 1;
    } else if (class_weight[1] == class_weight[0] && smallest[1] < smallest[0]) {
      chosen = 1;
    }
  }
  for (std::size_t i = static_cast<std::size_t>(chosen); i < edges.size(); i += 2) matching.push_back(edges[i]);
}

std::vector<int> canonical_cycle(std::vector<int> cycle) {
  auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it, cycle.end());
  if (cycle.size() > 2 && cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

template <class Scalar>
HalfIntegralSolution normalize_impl(const WeightedGraph& g, const HalfIntegralVector& raw) {
  const int n = g.num_vertices();
  if (raw.num_vertices != n) throw InputError("solution size does not match the instance");
  std::vector<int> load(n, 0);
  std::vector<std::vector<int>> half_adj(n);
  HalfIntegralSolution s;
  s.num_vertices = n;
  for (const auto& [key, h] : raw.halves) {
    if (h != 1 && h != 2) throw InputError("x must take values in {0, 1/2, 1}");
    if (key.first < 0 || key.second >= n || key.first >= key.second || !g.find_edge(key.first, key.second)) {
      throw InputError("x is supported on a non-edge");
    }
    load[key.first] += h;
    load[key.second] += h;
    if (h == 2) {
      s.matching.push_back(key);
    } else {
      half_adj[key.first].push_back(key.second);
      half_adj[key.second].push_back(key.first);
    }
  }
  for (int v = 0; v < n; ++v)
    if (load[v] > 2) throw InputError("x violates the vertex constraint at " + std::to_string(v));
  for (auto& list : half_adj) std::sort(list.begin(), list.end());

  std::vector<char> seen(n, 0);
  auto path_edges = [](const std::vector<int>& order, bool closed) {
    std::vector<VertexPair> edges;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) edges.push_back(make_pair_key(order[i], order[i + 1]));
    if (closed) edges.push_back(make_pair_key(order.back(), order.front()));
    return edges;
  };
  for (int v = 0; v < n; ++v) {
    if (seen[v] || half_adj[v].size() != 1) continue;
    auto order = walk(v, half_adj, seen);
    reround_alternating<Scalar>(g, path_edges(order, false), s.matching);
  }
  for (int v = 0; v < n; ++v) {
    if (seen[v] || half_adj[v].empty()) continue;
    auto order = walk(v, half_adj, seen);
    if (order.size() % 2 == 1) {
      s.cycles.push_back(canonical_cycle(std::move(order)));
    } else {
      reround_alternating<Scalar>(g, path_edges(order, true), s.matching);
    }
  }
  std::sort(s.matching.begin(), s.matching.end());
  std::sort(s.cycles.begin(), s.cycles.end());

  s.x.num_vertices = n;
  std::vector<char> covered(n, 0);
  for (const auto& key : s.matching) {
    s.x.halves[key] = 2;
    covered[key.first] = covered[key.second] = 1;
  }
  for (const auto& cycle : s.cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      s.x.halves[make_pair_key(cycle[i], cycle[(i + 1) % cycle.size()])] = 1;
      covered[cycle[i]] = 1;
    }
  }
  for (int v = 0; v < n; ++v)
    if (!covered[v]) s.unmatched.push_back(v);

  Scalar value(0);
  for (const auto& [key, h] : s.x.halves) {
    const Edge* e = g.find_edge(key.first, key.second);
    value += h == 2 ? edge_weight<Scalar>(*e) : edge_weight<Scalar>(*e) / Scalar(2);
  }
  if constexpr (std::is_same_v<Scalar, Rational>) {
    s.exact_lp_value = value;
    s.lp_value = to_double(value);
  } else {
    s.lp_value = value;
  }
  return s;
}

}  // namespace

HalfIntegralVector double_cover_solution(const WeightedGraph& g, Arithmetic arithmetic) {
  return arithmetic == Arithmetic::exact ? double_cover<Rational>(g) : double_cover<double>(g);
}

HalfIntegralSolution normalize(const WeightedGraph& g, const HalfIntegralVector& raw, Arithmetic arithmetic) {
  return arithmetic == Arithmetic::exact ? normalize_impl<Rational>(g, raw) : normalize_impl<double>(g, raw);
}

HalfIntegralSolution solve_lp(const WeightedGraph& g, Arithmetic arithmetic) {
  return normalize(g, double_cover_solution(g, arithmetic), arithmetic);
}

double LpEnergies::weighted_total(const WeightedGraph& g) const {
  double total = 0.0;
  for (const Edge& e : g.edges()) total += e.weight * energy(e.u, e.v);
  return total;
}

double upper_bound(const WeightedGraph& g, const HalfIntegralSolution& s) {
  return 0.5 * (g.total_weight() + s.lp_value);
}

std::optional<Rational> exact_upper_bound(const WeightedGraph& g, const HalfIntegralSolution& s) {
  if (!s.exact_lp_value) return std::nullopt;
  return Rational((g.exact_total_weight() + *s.exact_lp_value) / 2);
}

double star_bound_sum(std::span<const double> energies) {
  double sum = 0.0;
  for (double e : energies) sum += std::max(0.0, 2.0 * e - 1.0);
  return sum;
}

bool star_bound_check(std::span<const double> energies, double tolerance) {
  return star_bound_sum(energies) <= 1.0 + tolerance;
}

bool is_feasible(const WeightedGraph& g, const HalfIntegralVector& x) {
  std::vector<int> load(g.num_vertices(), 0);
  for (const auto& [key, h] : x.halves) {
    if (h < 0 || !g.find_edge(key.first, key.second)) return false;
    load[key.first] += h;
    load[key.second] += h;
  }
  return std::all_of(load.begin(), load.end(), [](int l) { return l <= 2; });
}

}  // namespace epr
