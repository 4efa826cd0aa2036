#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "epr/cycle_states.hpp"
#include "epr/fractional_matching.hpp"
#include "epr/instance.hpp"
#include "epr/mixture.hpp"

namespace epr {

// Tensor product of independent factors covering [n]. Each factor is a
// mixture of products of explicit blocks; the global 2^n state is never formed.
class RoundedState {
 public:
  RoundedState(int num_qubits, std::vector<std::shared_ptr<const MixtureProductState>> factors,
               std::optional<QubitFrame> frame = std::nullopt);

  int num_qubits() const noexcept { return n_; }
  const std::vector<std::shared_ptr<const MixtureProductState>>& factors() const noexcept { return factors_; }
  const std::optional<QubitFrame>& frame() const noexcept { return frame_; }

  RoundedState with_frame(QubitFrame frame) const;

  // Marginals of the unconjugated (EPR-frame) state.
  Matrix qubit_marginal(int qubit) const;
  Matrix pair_marginal(int i, int j) const;

  nlohmann::json to_json() const;

 private:
  int n_;
  std::vector<std::shared_ptr<const MixtureProductState>> factors_;
  std::vector<int> factor_of_;
  std::optional<QubitFrame> frame_;
};

// EPR_theta on matched edges, cycle states on odd cycles (in cycle order),
// diag(theta, 1-theta) on unmatched vertices.
RoundedState round(const WeightedGraph& g, const HalfIntegralSolution& s,
                   const CycleStateLibrary& library = CycleStateLibrary::shared());

// tr(rho E_ij) from the 2-qubit marginal.
double edge_energy(const RoundedState& rs, int i, int j);

// Singlet-projector energy of the frame-conjugated state (bipartite QMC).
double qmc_edge_energy(const RoundedState& rs, int i, int j);

struct EdgeRecord {
  int u = 0;
  int v = 0;
  double weight = 0.0;
  double lp_energy = 0.0;
  double achieved = 0.0;
  double ratio = 0.0;
};

struct Certificate {
  std::vector<EdgeRecord> edges;
  double achieved_total = 0.0;
  double upper_bound = 0.0;
  double total_ratio = 0.0;
  double alpha = 0.0;  // target ratio being certified
  double min_ratio = 0.0;
  double tolerance = 1e-9;
  bool pass = false;
  std::string algorithm = "main";
  std::string hamiltonian = "epr";  // "qmc" when a Y frame is attached

  nlohmann::json to_json() const;
};

inline constexpr double kCertificateTolerance = 1e-9;

// Per-edge ratios over all weighted edges (singlet energies under the Y frame
// when one is attached); pass iff min ratio >= target - tolerance.
Certificate certify(const WeightedGraph& g, const HalfIntegralSolution& s, const RoundedState& rs,
                    double target = AlgorithmConstants::get().alpha, double tolerance = kCertificateTolerance);

// Minimum over all pairs of tr(rho E_ij) / (alpha * E~_ij).
struct PairAudit {
  int u = -1;
  int v = -1;
  double min_ratio = 0.0;
  bool pass = false;
};
PairAudit audit_all_pairs(const HalfIntegralSolution& s, const RoundedState& rs,
                          double tolerance = kCertificateTolerance);

struct BaselineResult {
  RoundedState state;
  Certificate certificate;
};

// (1-p)|0^n><0^n| + p (EPR on M, I/2 on U). Requires an integral solution.
BaselineResult baseline_34(const WeightedGraph& g, const HalfIntegralSolution& s, double p = 0.5);

}  // namespace epr
