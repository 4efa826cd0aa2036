#pragma once

#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epr/quantum.hpp"

namespace epr {

// An explicit block with its 1- and 2-qubit marginals precomputed; shared
// between mixture components that place the same state on different qubits.
class LocalState {
 public:
  explicit LocalState(DensityBlock block);

  int num_qubits() const noexcept { return block_.num_qubits(); }
  const DensityBlock& block() const noexcept { return block_; }

  const Matrix& qubit_marginal(int position) const { return singles_.at(static_cast<std::size_t>(position)); }
  // 4x4 marginal ordered (p, q), positions local to the block.
  Matrix pair_marginal(int p, int q) const;

 private:
  DensityBlock block_;
  std::vector<Matrix> singles_;
  std::vector<Matrix> pairs_;  // p < q, row-major over (p, q)
};

struct PlacedBlock {
  std::shared_ptr<const LocalState> state;
  std::vector<int> qubits;  // global labels, in the state's bit order
};

struct MixtureComponent {
  double weight = 0.0;
  std::vector<PlacedBlock> blocks;
};

// sum_c weight_c * (tensor of blocks_c); every component's blocks partition
// the same qubit set.
class MixtureProductState {
 public:
  MixtureProductState(std::vector<int> qubits, std::vector<MixtureComponent> components);

  static MixtureProductState single(const DensityBlock& block);

  const std::vector<int>& qubits() const noexcept { return qubits_; }
  const std::vector<MixtureComponent>& components() const noexcept { return components_; }
  bool contains(int qubit) const { return index_of_.count(qubit) != 0; }

  Matrix qubit_marginal(int qubit) const;
  // 4x4 marginal with qubit order (i, j).
  Matrix pair_marginal(int i, int j) const;
  double pair_energy(int i, int j) const { return epr_energy(pair_marginal(i, j)); }

  // Maps qubits()[t] to labels[t].
  MixtureProductState relabeled(const std::vector<int>& labels) const;

 private:
  struct Location {
    int block = -1;
    int position = -1;
  };

  int local_index(int qubit) const;

  std::vector<int> qubits_;
  std::vector<MixtureComponent> components_;
  std::unordered_map<int, int> index_of_;
  std::vector<std::vector<Location>> locations_;  // [component][local index]
};

}  // namespace epr
