#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epr/mixture.hpp"
#include "epr/quantum.hpp"
#include "epr/sdp.hpp"

namespace epr {

// Requirements on a k-qubit cycle state: cycle edges above (3/4)alpha,
// every pair above alpha/2 (both strict), every 1-qubit marginal diag(theta, 1-theta).
struct CycleStateSpec {
  int k = 0;
  double edge_threshold = 0.0;
  double pair_threshold = 0.0;
  double theta = 0.0;

  static CycleStateSpec for_length(int k);
};

// Requirements on the 5-qubit seed: mean energy of path edges
// (0,1),(1,2),(2,3),(3,4) at least 0.668, every pair above alpha/2, uniform marginals.
struct PsiSpec {
  double path_energy_threshold = kPsiPathEnergy;
  double pair_threshold = 0.0;
  double theta = 0.0;

  static PsiSpec standard();
};

inline constexpr double kMarginalTolerance = 1e-8;
inline constexpr double kRequiredMargin = 1e-6;

// Weight of the classically correlated state theta|0..0><0..0| + (1-theta)|1..1><1..1|
// mixed into shift-averaged cycles long enough (k >= 11) that some pairs never
// share a block; without it those pairs sit exactly on alpha/2.
inline constexpr double kCorrelatedAdmixture = 1e-4;

struct SynthOptions {
  sdp::Options solver;
  double required_margin = kRequiredMargin;
};

struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  double margin = 0.0;
  double required_margin = 0.0;
  bool pass = false;

  nlohmann::json to_json() const;
};

struct VerificationReport {
  std::string subject;
  std::vector<Check> checks;

  bool pass() const;
  const Check* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

// Optimal-margin SDP solves; labels 0..k-1 in cycle order.
DensityBlock synth_small_cycle(int k, const SynthOptions& options = {});
DensityBlock synth_psi(const SynthOptions& options = {});

// Uniform mixture over the k rotations of EPR_theta pairs on (0,1), (2,3), ...,
// (k-7, k-6) followed by psi on k-5 .. k-1.
MixtureProductState shift_averaged_cycle(int k, const DensityBlock& psi);

MixtureProductState with_correlated_admixture(const MixtureProductState& state, double weight);

// State labels must be exactly {0, ..., k-1}; edges are (i, i+1 mod k).
VerificationReport verify_lemma5(const MixtureProductState& state, int k,
                                 double required_margin = kRequiredMargin);
VerificationReport verify_lemma5(const DensityBlock& state, int k, double required_margin = kRequiredMargin);
VerificationReport verify_psi(const DensityBlock& psi, double required_margin = kRequiredMargin);

// The three SDP-synthesized states plus the derived cycle states for odd k.
class CycleStateLibrary {
 public:
  // Verifies all three states; throws SynthesisFailed naming the failing check.
  CycleStateLibrary(DensityBlock rho3, DensityBlock rho5, DensityBlock psi);

  static CycleStateLibrary synthesize(const SynthOptions& options = {});
  static CycleStateLibrary load(const std::filesystem::path& dir);
  // Loads from `dir`; synthesizes (and tries to cache) whatever is missing.
  static CycleStateLibrary load_or_synthesize(const std::filesystem::path& dir);
  // $EPR_DATA_DIR, or the data/ directory of the source tree.
  static std::filesystem::path default_data_dir();
  // Process-wide library from default_data_dir(), built on first use.
  static const CycleStateLibrary& shared();

  void save(const std::filesystem::path& dir) const;

  const DensityBlock& rho3() const noexcept { return rho3_; }
  const DensityBlock& rho5() const noexcept { return rho5_; }
  const DensityBlock& psi() const noexcept { return psi_; }

  // Odd k >= 3. k = 3, 5: explicit block; k >= 7: shift-averaged mixture,
  // with the correlated admixture for k >= 11.
  std::shared_ptr<const MixtureProductState> cycle_state(int k) const;

 private:
  DensityBlock rho3_;
  DensityBlock rho5_;
  DensityBlock psi_;
  struct Cache {
    std::mutex mutex;
    std::map<int, std::shared_ptr<const MixtureProductState>> states;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// File names inside a data directory.
std::filesystem::path cycle_state_file(const std::filesystem::path& dir, const std::string& kind);

nlohmann::json cycle_state_document(const std::string& kind, const DensityBlock& state,
                                    const VerificationReport& report);

}  // namespace epr
