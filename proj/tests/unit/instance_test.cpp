#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "epr/errors.hpp"
#include "epr/instance.hpp"
#include "epr/quantum.hpp"
#include "oracles.hpp"

namespace epr {
namespace {

WeightedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edgelist(in);
}

int parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(Rational, ParsesIntegersDecimalsAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("1.5e-1"), Rational(3, 20));
  EXPECT_EQ(parse_rational("2/6"), Rational(1, 3));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(EdgeList, ParsesCommentsAndCanonicalizesOrder) {
  const auto g = parse("# triangle\n3\n2 1 1\n\n0 2 0.5\n1 0 1/3\n");
  ASSERT_EQ(g.num_vertices(), 3);
  ASSERT_EQ(g.num_edges(), 3U);
  EXPECT_EQ(g.edges()[0].u, 0);
  EXPECT_EQ(g.edges()[0].v, 1);
  EXPECT_EQ(g.edges()[0].exact_weight, Rational(1, 3));
  EXPECT_EQ(g.edges()[1].v, 2);
  EXPECT_EQ(g.edges()[2].u, 1);
  EXPECT_DOUBLE_EQ(g.total_weight(), 1.0 / 3 + 0.5 + 1.0);
  EXPECT_EQ(g.exact_total_weight(), Rational(11, 6));
}

TEST(EdgeList, ReportsTheOffendingLine) {
  EXPECT_EQ(parse_error_line("3\n0 1 1\n1 1 2\n"), 3);
  EXPECT_EQ(parse_error_line("3\n0 1 -1\n"), 2);
  EXPECT_EQ(parse_error_line("3\n# c\n0 5 1\n"), 3);
  EXPECT_EQ(parse_error_line("3\n0 1\n"), 2);
  EXPECT_EQ(parse_error_line("x\n"), 1);
  EXPECT_EQ(parse_error_line("3\n0 1 w\n"), 2);
  EXPECT_GT(parse_error_line("3\n0 1 1\n1 0 2\n"), 0);  // duplicate edge
  EXPECT_EQ(parse_error_line(""), 0);
}

TEST(EdgeList, ZeroWeightEdgesAreDropped) {
  const auto g = parse("3\n0 1 0\n1 2 1\n");
  EXPECT_EQ(g.num_edges(), 1U);
  EXPECT_FALSE(g.find_edge(0, 1));
}

TEST(Instance, LoadOfSaveIsIdentity) {
  const auto dir = std::filesystem::temp_directory_path() / "epr_instance_test";
  std::filesystem::create_directories(dir);
  for (unsigned seed = 1; seed <= 10; ++seed) {
    GeneratorParams params;
    params.size = 9;
    params.p = 0.5;
    params.seed = seed;
    params.weights = WeightSpec::parse(seed % 2 ? "uniform:0.1:2" : "int:7");
    const auto g = generate(Family::random_gnp, params);
    for (auto format : {InstanceFormat::edgelist, InstanceFormat::json}) {
      const auto path = dir / (format == InstanceFormat::json ? "g.json" : "g.txt");
      save_instance(path, g, format);
      const auto back = load_instance(path);
      ASSERT_EQ(back, g) << "seed " << seed;
      for (std::size_t i = 0; i < g.num_edges(); ++i) EXPECT_EQ(back.edges()[i].weight, g.edges()[i].weight);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(Instance, JsonAcceptsFractionStrings) {
  std::istringstream in(R"({"n": 3, "edges": [[0, 1, "1/3"], [1, 2, 2]]})");
  const auto g = parse_instance_json(in);
  EXPECT_EQ(g.edges()[0].exact_weight, Rational(1, 3));
  std::istringstream bad(R"({"n": 3, "edges": [[0, 1]]})");
  EXPECT_THROW(parse_instance_json(bad), InputError);
}

TEST(Instance, MissingFileIsAnInputError) {
  EXPECT_THROW(load_instance("/nonexistent/epr.txt"), InputError);
}

TEST(Bipartition, AgreesWithExhaustiveColoring) {
  for (unsigned seed = 1; seed <= 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 9);
    const auto g = testing::random_graph(n, 0.3, seed);
    const auto b = detect_bipartition(g);
    EXPECT_EQ(b.has_value(), testing::two_colorable(g)) << "seed " << seed;
    if (b) EXPECT_TRUE(is_valid_bipartition(g, *b));
  }
}

TEST(Bipartition, OddCycleHasNone) {
  GeneratorParams params;
  params.size = 7;
  EXPECT_FALSE(detect_bipartition(generate(Family::cycle, params)));
  params.size = 8;
  EXPECT_TRUE(detect_bipartition(generate(Family::cycle, params)));
}

TEST(QmcReduction, ConjugatesOneSide) {
  const auto g = parse("4\n0 1 1\n1 2 2\n2 3 1\n");
  const auto b = *detect_bipartition(g);
  const auto red = qmc_to_epr(g, b);
  EXPECT_EQ(red.graph, g);
  for (int v = 0; v < 4; ++v) {
    const bool in_a = std::find(b.side_a.begin(), b.side_a.end(), v) != b.side_a.end();
    EXPECT_EQ(red.frame.contains(v), in_a);
  }
  const auto triangle = parse("3\n0 1 1\n1 2 1\n0 2 1\n");
  EXPECT_THROW(qmc_to_epr(triangle, Bipartition{{0, 2}, {1}}), InputError);
}

TEST(QmcReduction, SingletEnergyOfConjugatedStateMatchesEprEnergy) {
  std::mt19937_64 rng(7);
  const Matrix yi = kron(pauli_y(), Matrix::Identity(2, 2));
  for (int trial = 0; trial < 200; ++trial) {
    const auto sigma = random_density_block(2, rng, trial % 4 == 0 ? 1 : 0).matrix();
    const Matrix conj = yi * sigma * yi.adjoint();
    const double singlet = (singlet_projector() * conj).trace().real();
    const double epr = (epr_projector() * sigma).trace().real();
    EXPECT_NEAR(singlet, epr, 1e-12);
  }
}

TEST(Generators, AreDeterministicPerSeed) {
  GeneratorParams params;
  params.size = 12;
  params.p = 0.4;
  params.weights = WeightSpec::parse("uniform:0.5:1.5");
  params.seed = 42;
  EXPECT_EQ(generate(Family::random_gnp, params), generate(Family::random_gnp, params));
  params.seed = 43;
  const auto other = generate(Family::random_gnp, params);
  params.seed = 42;
  EXPECT_FALSE(other == generate(Family::random_gnp, params));
}

TEST(Generators, FamilyShapes) {
  GeneratorParams params;
  params.size = 5;
  EXPECT_EQ(generate(Family::cycle, params).num_edges(), 5U);
  EXPECT_EQ(generate(Family::complete, params).num_edges(), 10U);
  const auto star = generate(Family::star, params);
  EXPECT_EQ(star.num_vertices(), 6);
  EXPECT_EQ(star.num_edges(), 5U);
  params.size_b = 3;
  params.p = 1.0;
  const auto kab = generate(Family::bipartite_random, params);
  EXPECT_EQ(kab.num_vertices(), 8);
  EXPECT_EQ(kab.num_edges(), 15U);
  EXPECT_TRUE(detect_bipartition(kab));
  EXPECT_THROW(parse_family("petersen"), InputError);
  EXPECT_THROW(WeightSpec::parse("uniform:2"), InputError);
}

}  // namespace
}  // namespace epr
