#pragma once

#include <vector>

#include <Eigen/Dense>

namespace epr::sdp {

enum class Sense { equal, greater_equal };

// sum_b <F_b, X_b> + sum_s c_s * t_s  (sense)  rhs
struct Constraint {
  std::vector<Eigen::MatrixXd> block_coeffs;  // one symmetric matrix per block, or empty for zero
  Eigen::VectorXd scalar_coeffs;              // one entry per free scalar, or empty
  Sense sense = Sense::equal;
  double rhs = 0.0;
};

// maximize  sum_b <C_b, X_b> + c^T t
// s.t.      constraints, X_b symmetric PSD, t free.
struct Problem {
  std::vector<int> block_sizes;
  int num_scalars = 0;
  std::vector<Constraint> constraints;
  std::vector<Eigen::MatrixXd> block_objective;  // optional
  Eigen::VectorXd scalar_objective;              // optional
};

struct Options {
  double rho = 1.0;
  double relaxation = 1.6;
  int max_iterations = 400000;
  double tolerance = 1e-10;
  int check_interval = 25;
};

struct Solution {
  std::vector<Eigen::MatrixXd> blocks;  // PSD by construction
  Eigen::VectorXd scalars;
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Operator-splitting (ADMM) solve: alternates projection onto the affine
// constraint set and onto PSD x R+^m x R^s.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace epr::sdp
