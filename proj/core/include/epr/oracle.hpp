#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "epr/cycle_states.hpp"
#include "epr/instance.hpp"
#include "epr/rational.hpp"

namespace epr {

inline constexpr int kMaxOracleQubits = 14;
// Above this size lambda_max switches from dense sector diagonalization to Lanczos.
inline constexpr int kMaxDenseEigenQubits = 10;
inline constexpr std::size_t kMaxBruteForceEdges = 18;

// H = sum w_ij E_ij on n <= 14 qubits. Real symmetric and entrywise
// nonnegative; commutes with Z^{(x)n}, so it splits into two parity sectors.
class DenseHamiltonian {
 public:
  explicit DenseHamiltonian(const WeightedGraph& g);

  int num_qubits() const noexcept { return n_; }
  double weight_sum() const noexcept { return weight_sum_; }

  // Full 2^n matrix (n <= 12).
  Eigen::MatrixXd dense() const;
  // Restriction to basis states of the given popcount parity, in increasing index order.
  Eigen::MatrixXd sector(int parity) const;
  std::vector<std::size_t> sector_indices(int parity) const;

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

 private:
  struct Term {
    int i;
    int j;
    double w;
  };
  int n_;
  double weight_sum_ = 0.0;
  std::vector<Term> terms_;
};

DenseHamiltonian build_hamiltonian(const WeightedGraph& g);

struct GroundState {
  double lambda_max = 0.0;
  Eigen::VectorXd vector;  // unit norm, full 2^n space
  double residual = 0.0;   // ||H v - lambda v||
  std::string method;      // "dense" or "lanczos"
};

GroundState lambda_max(const DenseHamiltonian& h);

// <v|E_ij|v> for all i < j, as an n x n symmetric table (zero diagonal).
Eigen::MatrixXd pair_energy_table(const Eigen::VectorXd& state, int n);

// max over vertices of sum_j max(0, 2 e_ij - 1).
double max_star_sum(const Eigen::MatrixXd& pair_energies);

struct RatioReport {
  int n = 0;
  std::size_t num_edges = 0;
  double lp_value = 0.0;
  double upper_bound = 0.0;
  double achieved = 0.0;
  double lp_ratio = 0.0;  // achieved / upper_bound
  std::optional<double> lambda_max;
  std::optional<double> exact_ratio;  // achieved / lambda_max
  std::optional<double> star_sum;     // of the top eigenvector
  double min_edge_ratio = 0.0;
  bool pass = false;

  nlohmann::json to_json() const;
};

RatioReport measure_ratio(const WeightedGraph& g, const CycleStateLibrary& library = CycleStateLibrary::shared());

// Exhaustive max of sum w x over x in {0, 1/2, 1}^E with vertex sums <= 1.
// Some LP optimum is half-integral, so this is LP(w). |E| <= 18.
double brute_force_lp(const WeightedGraph& g);
Rational brute_force_lp_exact(const WeightedGraph& g);

// Maximum-weight matching by enumeration.
double brute_force_matching(const WeightedGraph& g);
Rational brute_force_matching_exact(const WeightedGraph& g);

}  // namespace epr
