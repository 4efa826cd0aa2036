#include "epr/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace epr {
namespace {

Matrix swap_qubits(const Matrix& m) {
  static const int perm[4] = {0, 2, 1, 3};
  Matrix out(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out(perm[a], perm[b]) = m(a, b);
  return out;
}

}  // namespace

LocalState::LocalState(DensityBlock block) : block_(std::move(block)) {
  const int q = block_.num_qubits();
  const auto& labels = block_.qubits();
  for (int p = 0; p < q; ++p) {
    const int keep[1] = {labels[p]};
    singles_.push_back(partial_trace(block_, keep).matrix());
  }
  pairs_.resize(static_cast<std::size_t>(q * q));
  for (int p = 0; p < q; ++p) {
    for (int r = p + 1; r < q; ++r) {
      const int keep[2] = {labels[p], labels[r]};
      pairs_[static_cast<std::size_t>(p * q + r)] = partial_trace(block_, keep).matrix();
    }
  }
}

Matrix LocalState::pair_marginal(int p, int q) const {
  const int n = num_qubits();
  if (p == q || p < 0 || q < 0 || p >= n || q >= n) throw std::invalid_argument("invalid local qubit pair");
  if (p < q) return pairs_[static_cast<std::size_t>(p * n + q)];
  return swap_qubits(pairs_[static_cast<std::size_t>(q * n + p)]);
}

MixtureProductState::MixtureProductState(std::vector<int> qubits, std::vector<MixtureComponent> components)
    : qubits_(std::move(qubits)), components_(std::move(components)) {
  if (qubits_.empty()) throw std::invalid_argument("mixture must cover at least one qubit");
  if (components_.empty()) throw std::invalid_argument("mixture needs at least one component");
  for (std::size_t t = 0; t < qubits_.size(); ++t) {
    if (!index_of_.emplace(qubits_[t], static_cast<int>(t)).second) {
      throw std::invalid_argument("mixture qubit labels repeat");
    }
  }
  double total = 0.0;
  for (const auto& component : components_) {
    if (!(component.weight >= 0.0)) throw std::invalid_argument("mixture weights must be nonnegative");
    total += component.weight;
    std::vector<Location> where(qubits_.size());
    for (std::size_t b = 0; b < component.blocks.size(); ++b) {
      const PlacedBlock& placed = component.blocks[b];
      if (!placed.state || static_cast<int>(placed.qubits.size()) != placed.state->num_qubits()) {
        throw std::invalid_argument("placed block labels do not match its state");
      }
      for (std::size_t p = 0; p < placed.qubits.size(); ++p) {
        auto it = index_of_.find(placed.qubits[p]);
        if (it == index_of_.end()) throw std::invalid_argument("block covers a qubit outside the mixture");
        Location& loc = where[static_cast<std::size_t>(it->second)];
        if (loc.block >= 0) throw std::invalid_argument("blocks of a component overlap");
        loc = {static_cast<int>(b), static_cast<int>(p)};
      }
    }
    if (std::any_of(where.begin(), where.end(), [](const Location& l) { return l.block < 0; })) {
      throw std::invalid_argument("blocks of a component do not cover the qubit set");
    }
    locations_.push_back(std::move(where));
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to 1");
}

MixtureProductState MixtureProductState::single(const DensityBlock& block) {
  MixtureComponent component{1.0, {{std::make_shared<const LocalState>(block), block.qubits()}}};
  return MixtureProductState(block.qubits(), {std::move(component)});
}

int MixtureProductState::local_index(int qubit) const {
  auto it = index_of_.find(qubit);
  if (it == index_of_.end()) throw std::invalid_argument("qubit " + std::to_string(qubit) + " is not in the mixture");
  return it->second;
}

Matrix MixtureProductState::qubit_marginal(int qubit) const {
  const int t = local_index(qubit);
  Matrix out = Matrix::Zero(2, 2);
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const Location& loc = locations_[c][static_cast<std::size_t>(t)];
    out += components_[c].weight * components_[c].blocks[static_cast<std::size_t>(loc.block)].state->qubit_marginal(loc.position);
  }
  return out;
}

Matrix MixtureProductState::pair_marginal(int i, int j) const {
  if (i == j) throw std::invalid_argument("pair marginal needs two distinct qubits");
  const int ti = local_index(i);
  const int tj = local_index(j);
  Matrix out = Matrix::Zero(4, 4);
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const Location& li = locations_[c][static_cast<std::size_t>(ti)];
    const Location& lj = locations_[c][static_cast<std::size_t>(tj)];
    const auto& blocks = components_[c].blocks;
    if (li.block == lj.block) {
      out += components_[c].weight * blocks[static_cast<std::size_t>(li.block)].state->pair_marginal(li.position, lj.position);
    } else {
      out += components_[c].weight * kron(blocks[static_cast<std::size_t>(li.block)].state->qubit_marginal(li.position),
                                          blocks[static_cast<std::size_t>(lj.block)].state->qubit_marginal(lj.position));
    }
  }
  return out;
}

MixtureProductState MixtureProductState::relabeled(const std::vector<int>& labels) const {
  if (labels.size() != qubits_.size()) throw std::invalid_argument("relabel size mismatch");
  auto components = components_;
  for (auto& component : components)
    for (auto& placed : component.blocks)
      for (int& q : placed.qubits) q = labels[static_cast<std::size_t>(local_index(q))];
  return MixtureProductState(labels, std::move(components));
}

}  // namespace epr
