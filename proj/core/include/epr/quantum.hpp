#pragma once

#include <complex>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace epr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Explicit density matrices never exceed this many qubits.
inline constexpr int kMaxBlockQubits = 5;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;
inline constexpr double kTraceTolerance = 1e-10;

// gamma = (sqrt5 - 1)/4, theta >= 1/2 with sqrt(theta(1-theta)) = gamma,
// alpha = (1 + sqrt5)/4 = 1/2 + gamma.
struct AlgorithmConstants {
  double gamma;
  double theta;
  double alpha;

  // Computed once; aborts at startup if the cycle-construction slack
  // 4*0.668 + (1+sqrt5)/8 > 5*(3/4)*alpha does not hold.
  static const AlgorithmConstants& get();

  nlohmann::json to_json() const;
};

// Minimum average path energy required of the 5-qubit seed state psi.
inline constexpr double kPsiPathEnergy = 0.668;

class Ket {
 public:
  explicit Ket(Vector amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }

  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Vector amplitudes_;
  int num_qubits_ = 0;
};

// Hermitian PSD unit-trace matrix on <= 5 labeled qubits. Basis index bits
// follow the label order: the first label is the most significant bit.
class DensityBlock {
 public:
  DensityBlock(std::vector<int> qubits, Matrix matrix);

  static DensityBlock from_ket(std::vector<int> qubits, const Ket& ket);

  const std::vector<int>& qubits() const noexcept { return qubits_; }
  int num_qubits() const noexcept { return static_cast<int>(qubits_.size()); }
  const Matrix& matrix() const noexcept { return matrix_; }

  // Position of a global label within this block, or -1.
  int position_of(int qubit) const;

  DensityBlock relabeled(std::vector<int> qubits) const;

 private:
  std::vector<int> qubits_;
  Matrix matrix_;
};

// Checks used by the DensityBlock constructor; exposed for diagnostics.
double hermitian_error(const Matrix& m);
double min_eigenvalue(const Matrix& m);

Ket epr_ket();
Matrix epr_projector();
Matrix singlet_projector();
Matrix pauli_y();

// sqrt(theta)|00> + sqrt(1-theta)|11>; throws std::domain_error outside [0, 1].
Ket tilted_epr(double theta);

// diag(theta, 1 - theta).
Matrix diagonal_marginal(double theta);

// Reduced state on `keep`, in the order given.
DensityBlock partial_trace(const DensityBlock& block, std::span<const int> keep);

// tr(E * rho_ij) with rho_ij the 2-qubit marginal ordered (i, j).
double pair_energy(const DensityBlock& block, int i, int j);
double epr_energy(const Matrix& two_qubit);

Matrix kron(const Matrix& a, const Matrix& b);

// Kronecker product with label bookkeeping; at most kMaxBlockQubits total.
DensityBlock tensor(std::span<const DensityBlock> blocks);

// Conjugates a local operator on the qubits at `positions` (bit order as in
// DensityBlock) by `unitary`.
Matrix conjugate_local(const Matrix& m, int num_qubits, std::span<const int> positions,
                       const Matrix& unitary);

// G G^dagger / tr(G G^dagger) for a complex Gaussian G with `rank` columns
// (full rank when rank <= 0). Labels 0..q-1.
DensityBlock random_density_block(int num_qubits, std::mt19937_64& rng, int rank = 0);

nlohmann::json to_json(const DensityBlock& block);
DensityBlock density_block_from_json(const nlohmann::json& doc);

}  // namespace epr
