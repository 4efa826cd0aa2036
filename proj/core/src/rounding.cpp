#include "epr/rounding.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "epr/errors.hpp"

namespace epr {

RoundedState::RoundedState(int num_qubits, std::vector<std::shared_ptr<const MixtureProductState>> factors,
                           std::optional<QubitFrame> frame)
    : n_(num_qubits), factors_(std::move(factors)), factor_of_(static_cast<std::size_t>(num_qubits), -1),
      frame_(std::move(frame)) {
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    for (int q : factors_[f]->qubits()) {
      if (q < 0 || q >= n_) throw std::invalid_argument("factor covers a qubit outside [0, n)");
      if (factor_of_[q] >= 0) throw std::invalid_argument("factors overlap on qubit " + std::to_string(q));
      factor_of_[q] = static_cast<int>(f);
    }
  }
  if (std::count(factor_of_.begin(), factor_of_.end(), -1) != 0) {
    throw std::invalid_argument("factors do not cover every qubit");
  }
}

RoundedState RoundedState::with_frame(QubitFrame frame) const {
  return RoundedState(n_, factors_, std::move(frame));
}

Matrix RoundedState::qubit_marginal(int qubit) const {
  if (qubit < 0 || qubit >= n_) throw std::invalid_argument("qubit out of range");
  return factors_[static_cast<std::size_t>(factor_of_[qubit])]->qubit_marginal(qubit);
}

Matrix RoundedState::pair_marginal(int i, int j) const {
  if (i == j) throw std::invalid_argument("pair marginal needs two distinct qubits");
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::invalid_argument("qubit out of range");
  const int fi = factor_of_[i];
  const int fj = factor_of_[j];
  if (fi == fj) return factors_[static_cast<std::size_t>(fi)]->pair_marginal(i, j);
  return kron(qubit_marginal(i), qubit_marginal(j));
}

nlohmann::json RoundedState::to_json() const {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& factor : factors_) {
    nlohmann::json f;
    f["qubits"] = factor->qubits();
    f["components"] = factor->components().size();
    if (factor->components().size() == 1) {
      nlohmann::json blocks = nlohmann::json::array();
      for (const auto& placed : factor->components().front().blocks) {
        blocks.push_back({{"qubits", placed.qubits}, {"size", placed.state->num_qubits()}});
      }
      f["blocks"] = std::move(blocks);
    }
    factors.push_back(std::move(f));
  }
  nlohmann::json doc{{"n", n_}, {"factors", std::move(factors)}};
  if (frame_) doc["y_frame"] = frame_->y_conjugated;
  return doc;
}

RoundedState round(const WeightedGraph& g, const HalfIntegralSolution& s, const CycleStateLibrary& library) {
  const int n = g.num_vertices();
  if (s.num_vertices != n) throw std::invalid_argument("solution does not match the instance");
  const auto& constants = AlgorithmConstants::get();
  auto pair_state =
      std::make_shared<const LocalState>(DensityBlock::from_ket({0, 1}, tilted_epr(constants.theta)));
  auto single_state = std::make_shared<const LocalState>(DensityBlock({0}, diagonal_marginal(constants.theta)));

  std::vector<std::shared_ptr<const MixtureProductState>> factors;
  for (const auto& [u, v] : s.matching) {
    factors.push_back(std::make_shared<const MixtureProductState>(
        std::vector<int>{u, v}, std::vector<MixtureComponent>{{1.0, {{pair_state, {u, v}}}}}));
  }
  for (const auto& cycle : s.cycles) {
    const int k = static_cast<int>(cycle.size());
    if (k % 2 == 0) throw std::invalid_argument("even cycle in a normalized solution");
    factors.push_back(std::make_shared<const MixtureProductState>(library.cycle_state(k)->relabeled(cycle)));
  }
  for (int v : s.unmatched) {
    factors.push_back(std::make_shared<const MixtureProductState>(
        std::vector<int>{v}, std::vector<MixtureComponent>{{1.0, {{single_state, {v}}}}}));
  }
  return RoundedState(n, std::move(factors));
}

double edge_energy(const RoundedState& rs, int i, int j) { return epr_energy(rs.pair_marginal(i, j)); }

double qmc_edge_energy(const RoundedState& rs, int i, int j) {
  Matrix m = rs.pair_marginal(i, j);
  if (rs.frame()) {
    std::vector<int> positions;
    if (rs.frame()->contains(i)) positions.push_back(0);
    if (rs.frame()->contains(j)) positions.push_back(1);
    m = conjugate_local(m, 2, positions, pauli_y());
  }
  return (singlet_projector() * m).trace().real();
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& e : edges) {
    records.push_back({{"u", e.u}, {"v", e.v}, {"w", e.weight}, {"lp_energy", e.lp_energy},
                       {"achieved", e.achieved}, {"ratio", e.ratio}});
  }
  return {{"schema_version", 1},
          {"algorithm", algorithm},
          {"hamiltonian", hamiltonian},
          {"constants", AlgorithmConstants::get().to_json()},
          {"alpha", alpha},
          {"edges", std::move(records)},
          {"total", achieved_total},
          {"upper_bound", upper_bound},
          {"total_ratio", total_ratio},
          {"min_ratio", edges.empty() ? nlohmann::json(nullptr) : nlohmann::json(min_ratio)},
          {"tolerance", tolerance},
          {"pass", pass}};
}

Certificate certify(const WeightedGraph& g, const HalfIntegralSolution& s, const RoundedState& rs, double target,
                    double tolerance) {
  if (rs.num_qubits() != g.num_vertices()) throw std::invalid_argument("state does not match the instance");
  const LpEnergies lp(s);
  Certificate cert;
  cert.alpha = target;
  cert.hamiltonian = rs.frame() ? "qmc" : "epr";
  cert.tolerance = tolerance;
  cert.min_ratio = std::numeric_limits<double>::infinity();
  for (const Edge& e : g.edges()) {
    const double achieved = rs.frame() ? qmc_edge_energy(rs, e.u, e.v) : edge_energy(rs, e.u, e.v);
    EdgeRecord r{e.u, e.v, e.weight, lp.energy(e.u, e.v), achieved, 0.0};
    r.ratio = r.achieved / r.lp_energy;
    cert.achieved_total += e.weight * r.achieved;
    cert.min_ratio = std::min(cert.min_ratio, r.ratio);
    cert.edges.push_back(r);
  }
  cert.upper_bound = upper_bound(g, s);
  cert.total_ratio = cert.upper_bound > 0.0 ? cert.achieved_total / cert.upper_bound : 1.0;
  cert.pass = cert.edges.empty() || cert.min_ratio >= target - tolerance;
  return cert;
}

PairAudit audit_all_pairs(const HalfIntegralSolution& s, const RoundedState& rs, double tolerance) {
  const double alpha = AlgorithmConstants::get().alpha;
  const LpEnergies lp(s);
  PairAudit audit;
  audit.min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rs.num_qubits(); ++i) {
    for (int j = i + 1; j < rs.num_qubits(); ++j) {
      const double ratio = edge_energy(rs, i, j) / (alpha * lp.energy(i, j));
      if (ratio < audit.min_ratio) audit = {i, j, ratio, false};
    }
  }
  audit.pass = audit.u < 0 || audit.min_ratio >= 1.0 - tolerance;
  return audit;
}

BaselineResult baseline_34(const WeightedGraph& g, const HalfIntegralSolution& s, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mixing probability must lie in [0, 1]");
  if (!detect_bipartition(g)) throw InputError("the 3/4 baseline applies to bipartite instances only");
  if (!s.cycles.empty() || std::any_of(s.x.halves.begin(), s.x.halves.end(), [](const auto& kv) { return kv.second != 2; })) {
    throw InputError("the 3/4 baseline needs an integral LP solution");
  }
  const int n = g.num_vertices();
  std::vector<std::shared_ptr<const MixtureProductState>> factors;
  if (n > 0) {
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    auto zero_state = std::make_shared<const LocalState>(DensityBlock({0}, zero));
    auto mixed_state = std::make_shared<const LocalState>(DensityBlock({0}, 0.5 * Matrix::Identity(2, 2)));
    auto epr_state = std::make_shared<const LocalState>(DensityBlock::from_ket({0, 1}, epr_ket()));

    MixtureComponent product{1.0 - p, {}};
    for (int v = 0; v < n; ++v) product.blocks.push_back({zero_state, {v}});
    MixtureComponent matched{p, {}};
    for (const auto& [u, v] : s.matching) matched.blocks.push_back({epr_state, {u, v}});
    for (int v : s.unmatched) matched.blocks.push_back({mixed_state, {v}});

    std::vector<int> qubits(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) qubits[v] = v;
    factors.push_back(std::make_shared<const MixtureProductState>(
        std::move(qubits), std::vector<MixtureComponent>{std::move(product), std::move(matched)}));
  }
  RoundedState state(n, std::move(factors));
  // Matched edges reach 1/2 + p/2 against 1, others 1/2 - p/4 against 1/2.
  const double target = std::min(0.5 + 0.5 * p, 1.0 - 0.5 * p);
  Certificate cert = certify(g, s, state, target);
  cert.algorithm = "baseline34";
  return {std::move(state), std::move(cert)};
}

}  // namespace epr
