#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "epr/errors.hpp"
#include "epr/fractional_matching.hpp"
#include "epr/hungarian.hpp"
#include "epr/oracle.hpp"
#include "oracles.hpp"

namespace epr {
namespace {

WeightedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edgelist(in);
}

WeightedGraph cycle(int k) {
  GeneratorParams params;
  params.size = k;
  return generate(Family::cycle, params);
}

double objective(const WeightedGraph& g, const HalfIntegralVector& x) {
  double sum = 0.0;
  for (const auto& e : g.edges()) sum += e.weight * x.value(e.u, e.v);
  return sum;
}

void expect_feasible(const WeightedGraph& g, const HalfIntegralSolution& s) {
  ASSERT_TRUE(is_feasible(g, s.x));
  std::vector<double> load(g.num_vertices(), 0.0);
  for (const auto& e : g.edges()) {
    load[e.u] += s.x_value(e.u, e.v);
    load[e.v] += s.x_value(e.u, e.v);
  }
  for (double l : load) EXPECT_LE(l, 1.0 + 1e-12);
}

// Every vertex lies in exactly one of M, a cycle, or U; cycles are odd and use graph edges.
void expect_decomposition(const WeightedGraph& g, const HalfIntegralSolution& s) {
  std::vector<int> seen(g.num_vertices(), 0);
  for (auto [u, v] : s.matching) {
    EXPECT_TRUE(g.find_edge(u, v));
    EXPECT_EQ(s.x_value(u, v), 1.0);
    ++seen[u];
    ++seen[v];
  }
  for (const auto& c : s.cycles) {
    EXPECT_EQ(c.size() % 2, 1U);
    EXPECT_GE(c.size(), 3U);
    EXPECT_EQ(c.front(), *std::min_element(c.begin(), c.end()));
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int u = c[i];
      const int v = c[(i + 1) % c.size()];
      EXPECT_TRUE(g.find_edge(u, v));
      EXPECT_EQ(s.x_value(u, v), 0.5);
      ++seen[u];
    }
  }
  for (int u : s.unmatched) ++seen[u];
  for (int v = 0; v < g.num_vertices(); ++v) EXPECT_EQ(seen[v], 1) << "vertex " << v;
}

TEST(Hungarian, MatchesPermutationEnumeration) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> w(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (auto& row : m)
      for (auto& x : row) x = w(rng);
    const auto assignment = max_weight_assignment(m);
    double got = 0.0;
    for (int r = 0; r < n; ++r) got += m[r][assignment[r]];
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1.0;
    do {
      double total = 0.0;
      for (int r = 0; r < n; ++r) total += m[r][perm[r]];
      best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(got, best);
  }
}

TEST(Lp, Triangle) {
  const auto g = cycle(3);
  const auto s = solve_lp(g, Arithmetic::exact);
  EXPECT_EQ(*s.exact_lp_value, Rational(3, 2));
  EXPECT_EQ(*exact_upper_bound(g, s), Rational(9, 4));
  ASSERT_EQ(s.cycles.size(), 1U);
  EXPECT_EQ(s.cycles[0], (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(s.matching.empty());
}

TEST(Lp, FiveCycle) {
  const auto g = cycle(5);
  const auto s = solve_lp(g, Arithmetic::exact);
  EXPECT_EQ(*s.exact_lp_value, Rational(5, 2));
  EXPECT_EQ(*exact_upper_bound(g, s), Rational(15, 4));
  EXPECT_NEAR(upper_bound(g, s), 3.75, 1e-15);
}

TEST(Lp, EvenCycleIsRoundedToAMatching) {
  const auto g = cycle(6);
  const auto s = solve_lp(g);
  EXPECT_TRUE(s.cycles.empty());
  EXPECT_EQ(s.matching.size(), 3U);
  EXPECT_DOUBLE_EQ(s.lp_value, 3.0);
  expect_decomposition(g, s);
}

TEST(Lp, SingleEdgeAndEmptyGraph) {
  const auto g = parse("2\n0 1 1\n");
  const auto s = solve_lp(g);
  EXPECT_EQ(s.matching, (std::vector<VertexPair>{{0, 1}}));
  EXPECT_DOUBLE_EQ(upper_bound(g, s), 1.0);
  const auto empty = solve_lp(parse("3\n"));
  EXPECT_EQ(empty.unmatched.size(), 3U);
  EXPECT_EQ(empty.lp_value, 0.0);
}

TEST(Lp, TriangleWithPendantPrefersMatching) {
  // Edge weights favour a perfect matching over the triangle plus nothing.
  const auto g = parse("4\n0 1 1\n1 2 1\n0 2 1\n2 3 1\n");
  const auto s = solve_lp(g, Arithmetic::exact);
  EXPECT_EQ(*s.exact_lp_value, Rational(2));
  expect_decomposition(g, s);
}

TEST(Lp, AgreesWithSimplexAndBruteForce) {
  for (unsigned seed = 1; seed <= 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const auto g = testing::random_graph(n, 0.6, seed);
    const auto s = solve_lp(g);
    const auto exact = solve_lp(g, Arithmetic::exact);
    expect_feasible(g, s);
    expect_decomposition(g, s);
    expect_decomposition(g, exact);
    EXPECT_NEAR(s.lp_value, testing::simplex_lp(g), 1e-9) << "seed " << seed;
    EXPECT_EQ(*exact.exact_lp_value, testing::simplex_lp_exact(g)) << "seed " << seed;
    if (g.num_edges() <= kMaxBruteForceEdges) EXPECT_EQ(*exact.exact_lp_value, brute_force_lp_exact(g));
  }
}

TEST(Lp, RationalWeightsExact) {
  const auto g = parse("5\n0 1 1/3\n1 2 2/7\n2 0 1/5\n2 3 1/11\n3 4 3/13\n");
  const auto s = solve_lp(g, Arithmetic::exact);
  EXPECT_EQ(*s.exact_lp_value, testing::simplex_lp_exact(g));
  EXPECT_EQ(*s.exact_lp_value, brute_force_lp_exact(g));
}

TEST(Lp, BipartiteOptimaAreIntegralMaximumMatchings) {
  for (unsigned seed = 1; seed <= 100; ++seed) {
    GeneratorParams params;
    params.size = 1 + static_cast<int>(seed % 5);
    params.size_b = 1 + static_cast<int>((seed / 5) % 5);
    params.p = 0.6;
    params.weights = WeightSpec::parse("int:6");
    params.seed = seed;
    const auto g = generate(Family::bipartite_random, params);
    const auto s = solve_lp(g);
    EXPECT_TRUE(s.cycles.empty());
    for (const auto& [key, h] : s.x.halves) EXPECT_EQ(h, 2);
    EXPECT_NEAR(s.lp_value, testing::enumerate_matchings(g), 1e-9) << "seed " << seed;
  }
}

TEST(Normalize, NeverDecreasesTheObjective) {
  for (unsigned seed = 1; seed <= 100; ++seed) {
    const auto g = testing::random_graph(3 + static_cast<int>(seed % 8), 0.5, seed);
    const auto raw = double_cover_solution(g);
    ASSERT_TRUE(is_feasible(g, raw));
    const auto s = normalize(g, raw);
    EXPECT_GE(objective(g, s.x), objective(g, raw) - 1e-12);
    expect_feasible(g, s);
  }
}

TEST(Normalize, RejectsInfeasibleInput) {
  const auto g = cycle(3);
  HalfIntegralVector x{3, {{{0, 1}, 2}, {{1, 2}, 2}}};
  EXPECT_THROW(normalize(g, x), InputError);
}

TEST(Normalize, EvenHalfCycleGoesToHeavierClass) {
  const auto g = parse("4\n0 1 1\n1 2 3\n2 3 1\n0 3 3\n");
  HalfIntegralVector x{4, {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}, {{0, 3}, 1}}};
  const auto s = normalize(g, x);
  EXPECT_TRUE(s.in_matching(1, 2));
  EXPECT_TRUE(s.in_matching(0, 3));
  EXPECT_DOUBLE_EQ(s.lp_value, 6.0);
}

TEST(Lp, OddCycleHasCanonicalOrientation) {
  const auto g = parse("5\n0 3 1\n3 1 1\n1 4 1\n4 2 1\n2 0 1\n");
  const auto s = solve_lp(g);
  ASSERT_EQ(s.cycles.size(), 1U);
  EXPECT_EQ(s.cycles[0], (std::vector<int>{0, 2, 4, 1, 3}));
  EXPECT_EQ(s.cycle_of_edge(4, 1), 0);
  EXPECT_EQ(s.cycle_of_edge(0, 1), -1);
}

TEST(LpEnergies, BudgetsPerEdgeClass) {
  const auto g = parse("5\n0 1 1\n1 2 1\n0 2 1\n3 4 1\n2 3 0.1\n");
  const auto s = solve_lp(g);
  const auto e = lp_energies(s);
  EXPECT_DOUBLE_EQ(e.energy(3, 4), 1.0);
  EXPECT_DOUBLE_EQ(e.energy(0, 1), 0.75);
  EXPECT_DOUBLE_EQ(e.energy(2, 3), 0.5);
  EXPECT_NEAR(e.weighted_total(g), upper_bound(g, s), 1e-12);
}

TEST(StarBound, HoldsOnRandomStates) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int q = 2 + trial % 4;
    const auto block = random_density_block(q, rng, trial % 2 ? 1 : 0);
    for (int center = 0; center < q; ++center) {
      std::vector<double> energies;
      for (int j = 0; j < q; ++j)
        if (j != center) energies.push_back(pair_energy(block, center, j));
      EXPECT_TRUE(star_bound_check(energies));
    }
  }
  const double over[] = {1.0, 1.0};
  EXPECT_FALSE(star_bound_check(over));
  EXPECT_DOUBLE_EQ(star_bound_sum(over), 2.0);
}

}  // namespace
}  // namespace epr
