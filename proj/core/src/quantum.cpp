#include "epr/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace epr {
namespace {

AlgorithmConstants make_constants() {
  const double sqrt5 = std::sqrt(5.0);
  AlgorithmConstants c{};
  c.gamma = (sqrt5 - 1.0) / 4.0;
  c.theta = (1.0 + std::sqrt((sqrt5 - 1.0) / 2.0)) / 2.0;
  c.alpha = (1.0 + sqrt5) / 4.0;
  const double lhs = 4.0 * kPsiPathEnergy + (1.0 + sqrt5) / 8.0;
  const double rhs = 5.0 * 0.75 * c.alpha;
  if (!(lhs > rhs) || !(c.theta >= 0.5)) {
    std::fprintf(stderr, "fatal: algorithm constants failed their startup check\n");
    std::abort();
  }
  return c;
}

int qubits_for_dimension(Eigen::Index dim) {
  int q = 0;
  while ((Eigen::Index{1} << q) < dim) ++q;
  if ((Eigen::Index{1} << q) != dim) return -1;
  return q;
}

}  // namespace

const AlgorithmConstants& AlgorithmConstants::get() {
  static const AlgorithmConstants constants = make_constants();
  return constants;
}

nlohmann::json AlgorithmConstants::to_json() const {
  auto fixed15 = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15f", x);
    return std::string(buf);
  };
  return {{"alpha", alpha}, {"gamma", gamma}, {"theta", theta},
          {"alpha_15", fixed15(alpha)}, {"gamma_15", fixed15(gamma)}, {"theta_15", fixed15(theta)}};
}

Ket::Ket(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  num_qubits_ = qubits_for_dimension(amplitudes_.size());
  if (num_qubits_ < 1) throw std::invalid_argument("ket dimension must be a power of two >= 2");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) throw std::invalid_argument("ket is not unit norm");
}

double hermitian_error(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityBlock::DensityBlock(std::vector<int> qubits, Matrix matrix)
    : qubits_(std::move(qubits)), matrix_(std::move(matrix)) {
  const int q = static_cast<int>(qubits_.size());
  if (q < 1 || q > kMaxBlockQubits) {
    throw std::invalid_argument("density block must have 1.." + std::to_string(kMaxBlockQubits) + " qubits");
  }
  auto sorted = qubits_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("density block has repeated qubit labels");
  }
  const Eigen::Index dim = Eigen::Index{1} << q;
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("density block matrix has wrong dimension");
  }
  if (hermitian_error(matrix_) > kHermitianTolerance) throw std::invalid_argument("density block is not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > kTraceTolerance) {
    throw std::invalid_argument("density block does not have unit trace");
  }
  if (min_eigenvalue(matrix_) < -kPsdTolerance) throw std::invalid_argument("density block is not PSD");
}

DensityBlock DensityBlock::from_ket(std::vector<int> qubits, const Ket& ket) {
  if (static_cast<int>(qubits.size()) != ket.num_qubits()) {
    throw std::invalid_argument("label count does not match ket size");
  }
  return DensityBlock(std::move(qubits), ket.projector());
}

int DensityBlock::position_of(int qubit) const {
  auto it = std::find(qubits_.begin(), qubits_.end(), qubit);
  return it == qubits_.end() ? -1 : static_cast<int>(it - qubits_.begin());
}

DensityBlock DensityBlock::relabeled(std::vector<int> qubits) const {
  if (qubits.size() != qubits_.size()) throw std::invalid_argument("relabel size mismatch");
  return DensityBlock(std::move(qubits), matrix_);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Ket epr_ket() { return tilted_epr(0.5); }

Matrix epr_projector() { return epr_ket().projector(); }

Matrix singlet_projector() {
  Vector singlet = Vector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  return singlet * singlet.adjoint();
}

Matrix pauli_y() {
  Matrix y(2, 2);
  y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return y;
}

Ket tilted_epr(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("tilted EPR parameter must lie in [0, 1]");
  Vector v = Vector::Zero(4);
  v(0) = std::sqrt(theta);
  v(3) = std::sqrt(1.0 - theta);
  v /= v.norm();
  return Ket(std::move(v));
}

Matrix diagonal_marginal(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = theta;
  m(1, 1) = 1.0 - theta;
  return m;
}

DensityBlock partial_trace(const DensityBlock& block, std::span<const int> keep) {
  const int q = block.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial trace must keep at least one qubit");
  std::vector<int> positions;
  std::uint32_t keep_mask = 0;
  for (int label : keep) {
    int pos = block.position_of(label);
    if (pos < 0) throw std::invalid_argument("unknown qubit label " + std::to_string(label));
    std::uint32_t bit = 1u << (q - 1 - pos);
    if (keep_mask & bit) throw std::invalid_argument("repeated qubit label " + std::to_string(label));
    keep_mask |= bit;
    positions.push_back(pos);
  }
  const int k = static_cast<int>(positions.size());
  auto reduced_index = [&](std::uint32_t full) {
    std::uint32_t r = 0;
    for (int p : positions) r = (r << 1) | ((full >> (q - 1 - p)) & 1u);
    return r;
  };
  const std::uint32_t dim = 1u << q;
  const std::uint32_t traced_mask = (dim - 1) & ~keep_mask;
  Matrix out = Matrix::Zero(Eigen::Index{1} << k, Eigen::Index{1} << k);
  const Matrix& m = block.matrix();
  for (std::uint32_t a = 0; a < dim; ++a) {
    const std::uint32_t ra = reduced_index(a);
    for (std::uint32_t b = 0; b < dim; ++b) {
      if ((a & traced_mask) != (b & traced_mask)) continue;
      out(ra, reduced_index(b)) += m(a, b);
    }
  }
  return DensityBlock(std::vector<int>(keep.begin(), keep.end()), std::move(out));
}

double epr_energy(const Matrix& two_qubit) {
  if (two_qubit.rows() != 4 || two_qubit.cols() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  return 0.5 * (two_qubit(0, 0) + two_qubit(0, 3) + two_qubit(3, 0) + two_qubit(3, 3)).real();
}

double pair_energy(const DensityBlock& block, int i, int j) {
  if (i == j) throw std::invalid_argument("pair energy needs two distinct qubits");
  const int pair[2] = {i, j};
  return epr_energy(partial_trace(block, pair).matrix());
}

DensityBlock tensor(std::span<const DensityBlock> blocks) {
  if (blocks.empty()) throw std::invalid_argument("tensor of an empty block list");
  std::vector<int> labels;
  for (const auto& b : blocks) labels.insert(labels.end(), b.qubits().begin(), b.qubits().end());
  if (static_cast<int>(labels.size()) > kMaxBlockQubits) {
    throw std::invalid_argument("tensor exceeds the " + std::to_string(kMaxBlockQubits) + "-qubit block cap");
  }
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("tensor factors share qubits");
  }
  Matrix m = blocks.front().matrix();
  for (std::size_t i = 1; i < blocks.size(); ++i) m = kron(m, blocks[i].matrix());
  return DensityBlock(std::move(labels), std::move(m));
}

Matrix conjugate_local(const Matrix& m, int num_qubits, std::span<const int> positions,
                       const Matrix& unitary) {
  Matrix full = Matrix::Identity(1, 1);
  for (int p = 0; p < num_qubits; ++p) {
    bool hit = std::find(positions.begin(), positions.end(), p) != positions.end();
    full = kron(full, hit ? unitary : Matrix::Identity(2, 2));
  }
  return full * m * full.adjoint();
}

DensityBlock random_density_block(int num_qubits, std::mt19937_64& rng, int rank) {
  if (num_qubits < 1 || num_qubits > kMaxBlockQubits) throw std::invalid_argument("random state size out of range");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  const Eigen::Index cols = rank <= 0 ? dim : std::min<Eigen::Index>(rank, dim);
  std::normal_distribution<double> normal;
  Matrix g(dim, cols);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  std::vector<int> labels(static_cast<std::size_t>(num_qubits));
  for (int q = 0; q < num_qubits; ++q) labels[q] = q;
  return DensityBlock(std::move(labels), std::move(rho));
}

nlohmann::json to_json(const DensityBlock& block) {
  nlohmann::json rows = nlohmann::json::array();
  const Matrix& m = block.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"qubits", block.qubits()}, {"matrix", std::move(rows)}};
}

DensityBlock density_block_from_json(const nlohmann::json& doc) {
  auto qubits = doc.at("qubits").get<std::vector<int>>();
  const auto& rows = doc.at("matrix");
  const auto dim = static_cast<Eigen::Index>(rows.size());
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != dim) throw std::invalid_argument("density matrix is not square");
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto& entry = row.at(static_cast<std::size_t>(j));
      m(i, j) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return DensityBlock(std::move(qubits), std::move(m));
}

}  // namespace epr
