#include <sstream>

#include <gtest/gtest.h>

#include "epr/errors.hpp"
#include "epr/oracle.hpp"
#include "epr/rounding.hpp"
#include "oracles.hpp"

namespace epr {
namespace {

const CycleStateLibrary& library() {
  static const CycleStateLibrary lib = CycleStateLibrary::load(EPR_TEST_DATA_DIR);
  return lib;
}

WeightedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edgelist(in);
}

TEST(Hamiltonian, MatchesPauliConstruction) {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    const auto g = testing::random_graph(2 + static_cast<int>(seed % 5), 0.6, seed);
    const Eigen::MatrixXd dense = build_hamiltonian(g).dense();
    const Eigen::MatrixXcd pauli = testing::pauli_hamiltonian(g);
    EXPECT_LT((dense.cast<std::complex<double>>() - pauli).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(pauli.imag().cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Hamiltonian, ApplyAgreesWithDenseMatrix) {
  const auto g = testing::random_graph(7, 0.5, 3);
  const auto h = build_hamiltonian(g);
  const Eigen::VectorXd v = Eigen::VectorXd::Random(128);
  EXPECT_LT((h.apply(v) - h.dense() * v).norm(), 1e-12);
}

TEST(LambdaMax, AgreesWithPauliDiagonalization) {
  for (unsigned seed = 1; seed <= 30; ++seed) {
    const auto g = testing::random_graph(2 + static_cast<int>(seed % 7), 0.5, seed);
    const auto gs = lambda_max(build_hamiltonian(g));
    EXPECT_NEAR(gs.lambda_max, testing::dense_lambda_max(g), 1e-9) << "seed " << seed;
    EXPECT_LT(gs.residual, 1e-8);
  }
}

TEST(LambdaMax, LanczosAgreesWithDenseSectors) {
  // n = 11 runs Lanczos; the dense sector solve on the same graph is the reference.
  const auto g = testing::random_graph(11, 0.4, 5);
  const auto h = build_hamiltonian(g);
  const auto gs = lambda_max(h);
  EXPECT_EQ(gs.method, "lanczos");
  double best = 0.0;
  for (int parity : {0, 1}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h.sector(parity), Eigen::EigenvaluesOnly);
    best = std::max(best, eig.eigenvalues().maxCoeff());
  }
  EXPECT_NEAR(gs.lambda_max, best, 1e-9);
  EXPECT_LT(gs.residual, 1e-6);
}

TEST(LambdaMax, KnownValues) {
  EXPECT_NEAR(lambda_max(build_hamiltonian(parse("2\n0 1 1\n"))).lambda_max, 1.0, 1e-12);
  // K_{1,3}: at most the upper bound (3 + 1)/2 = 2.
  const auto star = parse("4\n0 1 1\n0 2 1\n0 3 1\n");
  const double lm = lambda_max(build_hamiltonian(star)).lambda_max;
  EXPECT_LE(lm, 2.0 + 1e-12);
  EXPECT_NEAR(lm, testing::dense_lambda_max(star), 1e-12);
}

TEST(LambdaMax, BoundedByTheLpUpperBound) {
  for (unsigned seed = 1; seed <= 40; ++seed) {
    const auto g = testing::random_graph(3 + static_cast<int>(seed % 8), 0.5, seed);
    const auto gs = lambda_max(build_hamiltonian(g));
    EXPECT_LE(gs.lambda_max, upper_bound(g, solve_lp(g)) + 1e-9);
    EXPECT_LE(max_star_sum(pair_energy_table(gs.vector, g.num_vertices())), 1.0 + 1e-9);
  }
}

TEST(PairEnergyTable, MatchesGlobalProjector) {
  const auto g = testing::random_graph(5, 0.7, 2);
  const auto gs = lambda_max(build_hamiltonian(g));
  const auto table = pair_energy_table(gs.vector, 5);
  const Eigen::MatrixXcd rho = gs.vector.cast<std::complex<double>>() * gs.vector.cast<std::complex<double>>().adjoint();
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) EXPECT_NEAR(table(i, j), testing::global_pair_energy(rho, 5, i, j), 1e-12);
}

TEST(BruteForce, AgreesWithIndependentOracles) {
  for (unsigned seed = 1; seed <= 60; ++seed) {
    const auto g = testing::random_graph(2 + static_cast<int>(seed % 7), 0.5, seed);
    EXPECT_EQ(brute_force_lp_exact(g), testing::simplex_lp_exact(g));
    EXPECT_NEAR(brute_force_matching(g), testing::enumerate_matchings(g), 1e-12);
  }
  EXPECT_THROW(brute_force_lp(testing::random_graph(12, 1.0, 1)), InputError);
}

TEST(MeasureRatio, ReportsBothRatios) {
  const auto g = parse("3\n0 1 1\n1 2 1\n0 2 1\n");
  const auto r = measure_ratio(g, library());
  ASSERT_TRUE(r.lambda_max);
  EXPECT_NEAR(r.upper_bound, 2.25, 1e-12);
  EXPECT_LE(*r.lambda_max, r.upper_bound + 1e-12);
  EXPECT_GE(*r.exact_ratio, AlgorithmConstants::get().alpha);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.to_json().contains("constants"));
}

}  // namespace
}  // namespace epr
