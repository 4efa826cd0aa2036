#include "epr/cycle_states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "epr/errors.hpp"

#ifndef EPR_DEFAULT_DATA_DIR
#define EPR_DEFAULT_DATA_DIR "data"
#endif

namespace epr {

CycleStateSpec CycleStateSpec::for_length(int k) {
  const auto& c = AlgorithmConstants::get();
  return {k, 0.75 * c.alpha, 0.5 * c.alpha, c.theta};
}

PsiSpec PsiSpec::standard() {
  const auto& c = AlgorithmConstants::get();
  return {kPsiPathEnergy, 0.5 * c.alpha, c.theta};
}

nlohmann::json Check::to_json() const {
  return {{"name", name}, {"measured", measured}, {"threshold", threshold},
          {"margin", margin}, {"required_margin", required_margin}, {"pass", pass}};
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& c : checks) items.push_back(c.to_json());
  return {{"subject", subject}, {"pass", pass()}, {"checks", std::move(items)}};
}

namespace {

using Real = Eigen::MatrixXd;

// E on qubits (p, q) of k, tensored with identity; first qubit is the MSB.
Real full_pair_projector(int k, int p, int q) {
  const int dim = 1 << k;
  const int bp = k - 1 - p;
  const int bq = k - 1 - q;
  const int mask = (1 << bp) | (1 << bq);
  Real e = Real::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    if (((a >> bp) & 1) != ((a >> bq) & 1)) continue;
    e(a, a) += 0.5;
    e(a, a ^ mask) += 0.5;
  }
  return e;
}

Real zero_indicator(int k, int qubit) {
  const int dim = 1 << k;
  Real d = Real::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    if (((a >> (k - 1 - qubit)) & 1) == 0) d(a, a) = 1.0;
  return d;
}

// Every functional here commutes with Z^{(x)k}, so X may be taken block
// diagonal over the even/odd parity sectors; this also forces the
// off-diagonal entries of every 1-qubit marginal to vanish.
struct ParitySectors {
  int k;
  std::vector<int> index[2];

  explicit ParitySectors(int qubits) : k(qubits) {
    for (int a = 0; a < (1 << k); ++a) index[std::popcount(static_cast<unsigned>(a)) & 1].push_back(a);
  }

  std::vector<Real> restrict(const Real& full) const {
    std::vector<Real> blocks;
    for (const auto& idx : index) {
      const auto d = static_cast<Eigen::Index>(idx.size());
      Real b(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) b(i, j) = full(idx[i], idx[j]);
      blocks.push_back(std::move(b));
    }
    return blocks;
  }

  Real assemble(const std::vector<Real>& blocks) const {
    Real x = Real::Zero(1 << k, 1 << k);
    for (int s = 0; s < 2; ++s) {
      const auto& idx = index[s];
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
          x(idx[i], idx[j]) = blocks[s](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    return x;
  }

  std::vector<int> sizes() const { return {static_cast<int>(index[0].size()), static_cast<int>(index[1].size())}; }
};

sdp::Constraint functional(const ParitySectors& sectors, const Real& full, sdp::Sense sense, double rhs,
                           double slack_coeff) {
  sdp::Constraint c;
  c.block_coeffs = sectors.restrict(full);
  c.scalar_coeffs = Eigen::VectorXd::Constant(1, slack_coeff);
  c.sense = sense;
  c.rhs = rhs;
  return c;
}

sdp::Problem base_problem(const ParitySectors& sectors, double theta) {
  sdp::Problem p;
  p.block_sizes = sectors.sizes();
  p.num_scalars = 1;
  p.scalar_objective = Eigen::VectorXd::Constant(1, 1.0);
  const int k = sectors.k;
  p.constraints.push_back(functional(sectors, Real::Identity(1 << k, 1 << k), sdp::Sense::equal, 1.0, 0.0));
  for (int q = 0; q < k; ++q) {
    p.constraints.push_back(functional(sectors, zero_indicator(k, q), sdp::Sense::equal, theta, 0.0));
  }
  return p;
}

// Projects to a valid state with marginals exactly diag(theta, 1-theta):
// clip, renormalize, then mix in a small diagonal product state that
// cancels the residual marginal error.
DensityBlock finalize_state(Real x, int k, double theta) {
  x = 0.5 * (x + x.transpose());
  Eigen::SelfAdjointEigenSolver<Real> eig(x);
  x = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).asDiagonal() * eig.eigenvectors().transpose();
  x /= x.trace();
  const int dim = 1 << k;
  std::vector<double> zero_prob(static_cast<std::size_t>(k), 0.0);
  double deviation = 0.0;
  for (int q = 0; q < k; ++q) {
    for (int a = 0; a < dim; ++a)
      if (((a >> (k - 1 - q)) & 1) == 0) zero_prob[q] += x(a, a);
    deviation = std::max(deviation, std::abs(zero_prob[q] - theta));
  }
  if (deviation > 0.0) {
    const double eps = std::min(0.5, 10.0 * deviation / std::min(theta, 1.0 - theta));
    Real mix = (1.0 - eps) * x;
    for (int a = 0; a < dim; ++a) {
      double prob = 1.0;
      for (int q = 0; q < k; ++q) {
        const double mu = zero_prob[q] + (theta - zero_prob[q]) / eps;
        prob *= ((a >> (k - 1 - q)) & 1) == 0 ? mu : 1.0 - mu;
      }
      mix(a, a) += eps * prob;
    }
    x = std::move(mix);
  }
  std::vector<int> labels(static_cast<std::size_t>(k));
  for (int q = 0; q < k; ++q) labels[q] = q;
  return DensityBlock(std::move(labels), x.cast<Complex>());
}

Check lower_bound_check(std::string name, double measured, double threshold, double required_margin) {
  const double margin = measured - threshold;
  return {std::move(name), measured, threshold, margin, required_margin, margin > 0.0 && margin >= required_margin};
}

Check marginal_check(double deviation) {
  return {"marginals", deviation, kMarginalTolerance, kMarginalTolerance - deviation, 0.0,
          deviation <= kMarginalTolerance};
}

template <class State>
double max_marginal_deviation(const State& marginal_of, int k, double theta) {
  const Matrix target = diagonal_marginal(theta);
  double deviation = 0.0;
  for (int q = 0; q < k; ++q) deviation = std::max(deviation, (marginal_of(q) - target).cwiseAbs().maxCoeff());
  return deviation;
}

void require_pass(const VerificationReport& report) {
  if (report.pass()) return;
  std::string failed;
  for (const auto& c : report.checks) {
    if (c.pass) continue;
    if (!failed.empty()) failed += ", ";
    failed += c.name + " (margin " + std::to_string(c.margin) + ")";
  }
  throw SynthesisFailed(report.subject + " failed verification: " + failed);
}

}  // namespace

DensityBlock synth_small_cycle(int k, const SynthOptions& options) {
  if (k != 3 && k != 5) throw std::invalid_argument("explicit cycle states exist for k = 3 and k = 5 only");
  const auto spec = CycleStateSpec::for_length(k);
  const ParitySectors sectors(k);
  sdp::Problem problem = base_problem(sectors, spec.theta);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const bool cycle_edge = j == i + 1 || (i == 0 && j == k - 1);
      problem.constraints.push_back(functional(sectors, full_pair_projector(k, i, j), sdp::Sense::greater_equal,
                                               cycle_edge ? spec.edge_threshold : spec.pair_threshold, -1.0));
    }
  }
  const auto solution = sdp::solve(problem, options.solver);
  DensityBlock state = finalize_state(sectors.assemble(solution.blocks), k, spec.theta);
  require_pass(verify_lemma5(state, k, options.required_margin));
  return state;
}

DensityBlock synth_psi(const SynthOptions& options) {
  const auto spec = PsiSpec::standard();
  constexpr int k = 5;
  const ParitySectors sectors(k);
  sdp::Problem problem = base_problem(sectors, spec.theta);
  Real path = Real::Zero(1 << k, 1 << k);
  for (int i = 0; i + 1 < k; ++i) path += 0.25 * full_pair_projector(k, i, i + 1);
  problem.constraints.push_back(
      functional(sectors, path, sdp::Sense::greater_equal, spec.path_energy_threshold, -1.0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      problem.constraints.push_back(functional(sectors, full_pair_projector(k, i, j), sdp::Sense::greater_equal,
                                               spec.pair_threshold, -1.0));
  const auto solution = sdp::solve(problem, options.solver);
  DensityBlock state = finalize_state(sectors.assemble(solution.blocks), k, spec.theta);
  require_pass(verify_psi(state, options.required_margin));
  return state;
}

MixtureProductState shift_averaged_cycle(int k, const DensityBlock& psi) {
  if (k < 7 || k % 2 == 0) throw std::invalid_argument("shift-averaged cycle states need odd k >= 7");
  if (psi.num_qubits() != 5) throw std::invalid_argument("psi must be a 5-qubit state");
  const auto& constants = AlgorithmConstants::get();
  auto pair_state = std::make_shared<const LocalState>(DensityBlock::from_ket({0, 1}, tilted_epr(constants.theta)));
  auto psi_state = std::make_shared<const LocalState>(psi.relabeled({0, 1, 2, 3, 4}));
  std::vector<int> qubits(static_cast<std::size_t>(k));
  for (int q = 0; q < k; ++q) qubits[q] = q;

  std::vector<MixtureComponent> components;
  for (int shift = 0; shift < k; ++shift) {
    auto at = [&](int position) { return (position + shift) % k; };
    MixtureComponent component{1.0 / k, {}};
    for (int first = 0; first + 1 < k - 5; first += 2) {
      component.blocks.push_back({pair_state, {at(first), at(first + 1)}});
    }
    component.blocks.push_back({psi_state, {at(k - 5), at(k - 4), at(k - 3), at(k - 2), at(k - 1)}});
    components.push_back(std::move(component));
  }
  // Weights 1/k must sum to 1 within the mixture tolerance.
  double total = 0.0;
  for (const auto& c : components) total += c.weight;
  components.back().weight += 1.0 - total;
  return MixtureProductState(std::move(qubits), std::move(components));
}

MixtureProductState with_correlated_admixture(const MixtureProductState& state, double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) throw std::invalid_argument("admixture weight must lie in [0, 1]");
  const double theta = AlgorithmConstants::get().theta;
  auto components = state.components();
  for (auto& c : components) c.weight *= 1.0 - weight;
  for (int bit = 0; bit < 2; ++bit) {
    Matrix m = Matrix::Zero(2, 2);
    m(bit, bit) = 1.0;
    auto basis_state = std::make_shared<const LocalState>(DensityBlock({0}, m));
    MixtureComponent component{weight * (bit == 0 ? theta : 1.0 - theta), {}};
    for (int q : state.qubits()) component.blocks.push_back({basis_state, {q}});
    components.push_back(std::move(component));
  }
  return MixtureProductState(state.qubits(), std::move(components));
}

VerificationReport verify_lemma5(const MixtureProductState& state, int k, double required_margin) {
  auto labels = state.qubits();
  std::sort(labels.begin(), labels.end());
  for (int q = 0; q < k; ++q) {
    if (static_cast<int>(labels.size()) != k || labels[q] != q) {
      throw std::invalid_argument("cycle state must be labeled 0..k-1");
    }
  }
  const auto spec = CycleStateSpec::for_length(k);
  double edge_min = 1.0;
  for (int i = 0; i < k; ++i) edge_min = std::min(edge_min, state.pair_energy(i, (i + 1) % k));
  double pair_min = 1.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pair_min = std::min(pair_min, state.pair_energy(i, j));
  const double deviation =
      max_marginal_deviation([&](int q) { return state.qubit_marginal(q); }, k, spec.theta);

  VerificationReport report;
  report.subject = "rho_" + std::to_string(k);
  report.checks.push_back(lower_bound_check("cycle_edges", edge_min, spec.edge_threshold, required_margin));
  report.checks.push_back(marginal_check(deviation));
  report.checks.push_back(lower_bound_check("all_pairs", pair_min, spec.pair_threshold, required_margin));
  return report;
}

VerificationReport verify_lemma5(const DensityBlock& state, int k, double required_margin) {
  if (state.num_qubits() != k) throw std::invalid_argument("state size does not match k");
  return verify_lemma5(MixtureProductState::single(state), k, required_margin);
}

VerificationReport verify_psi(const DensityBlock& psi, double required_margin) {
  if (psi.num_qubits() != 5) throw std::invalid_argument("psi must be a 5-qubit state");
  const auto spec = PsiSpec::standard();
  const LocalState local(psi);
  double path = 0.0;
  for (int p = 0; p < 4; ++p) path += 0.25 * epr_energy(local.pair_marginal(p, p + 1));
  double pair_min = 1.0;
  for (int p = 0; p < 5; ++p)
    for (int q = p + 1; q < 5; ++q) pair_min = std::min(pair_min, epr_energy(local.pair_marginal(p, q)));
  const double deviation = max_marginal_deviation([&](int q) { return local.qubit_marginal(q); }, 5, spec.theta);

  VerificationReport report;
  report.subject = "psi";
  Check path_check = lower_bound_check("path_energy", path, spec.path_energy_threshold, 0.0);
  path_check.pass = path_check.margin >= 0.0;  // non-strict
  report.checks.push_back(path_check);
  report.checks.push_back(lower_bound_check("all_pairs", pair_min, spec.pair_threshold, required_margin));
  report.checks.push_back(marginal_check(deviation));
  return report;
}

// ---------------------------------------------------------------------------

CycleStateLibrary::CycleStateLibrary(DensityBlock rho3, DensityBlock rho5, DensityBlock psi)
    : rho3_(std::move(rho3)), rho5_(std::move(rho5)), psi_(std::move(psi)) {
  require_pass(verify_lemma5(rho3_, 3));
  require_pass(verify_lemma5(rho5_, 5));
  require_pass(verify_psi(psi_));
}

CycleStateLibrary CycleStateLibrary::synthesize(const SynthOptions& options) {
  return CycleStateLibrary(synth_small_cycle(3, options), synth_small_cycle(5, options), synth_psi(options));
}

std::filesystem::path cycle_state_file(const std::filesystem::path& dir, const std::string& kind) {
  return dir / (kind + ".json");
}

nlohmann::json cycle_state_document(const std::string& kind, const DensityBlock& state,
                                    const VerificationReport& report) {
  return {{"schema_version", 1},
          {"kind", kind},
          {"constants", AlgorithmConstants::get().to_json()},
          {"state", to_json(state)},
          {"verification", report.to_json()}};
}

namespace {

DensityBlock read_cached(const std::filesystem::path& dir, const std::string& kind) {
  const auto path = cycle_state_file(dir, kind);
  std::ifstream in(path);
  if (!in) throw InputError("missing cached state " + path.string());
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.at("kind").get<std::string>() != kind) throw InputError(path.string() + " holds the wrong state kind");
    return density_block_from_json(doc.at("state"));
  } catch (const nlohmann::json::exception& err) {
    throw SynthesisFailed("cached " + kind + " is unreadable: " + err.what());
  } catch (const std::invalid_argument& err) {
    throw SynthesisFailed("cached " + kind + " is not a valid state: " + err.what());
  }
}

void write_cached(const std::filesystem::path& dir, const std::string& kind, const DensityBlock& state,
                  const VerificationReport& report) {
  std::filesystem::create_directories(dir);
  std::ofstream out(cycle_state_file(dir, kind));
  if (!out) throw InputError("cannot write " + cycle_state_file(dir, kind).string());
  out << cycle_state_document(kind, state, report).dump(1) << '\n';
}

}  // namespace

CycleStateLibrary CycleStateLibrary::load(const std::filesystem::path& dir) {
  return CycleStateLibrary(read_cached(dir, "rho3"), read_cached(dir, "rho5"), read_cached(dir, "psi"));
}

CycleStateLibrary CycleStateLibrary::load_or_synthesize(const std::filesystem::path& dir) {
  auto get = [&](const std::string& kind, auto&& make) {
    if (std::filesystem::exists(cycle_state_file(dir, kind))) return read_cached(dir, kind);
    DensityBlock state = make();
    try {
      VerificationReport report = kind == "psi" ? verify_psi(state) : verify_lemma5(state, state.num_qubits());
      write_cached(dir, kind, state, report);
    } catch (const std::exception&) {
      // Read-only data directory: keep the in-memory state.
    }
    return state;
  };
  return CycleStateLibrary(get("rho3", [] { return synth_small_cycle(3); }),
                           get("rho5", [] { return synth_small_cycle(5); }), get("psi", [] { return synth_psi(); }));
}

std::filesystem::path CycleStateLibrary::default_data_dir() {
  if (const char* env = std::getenv("EPR_DATA_DIR"); env && *env) return env;
  return EPR_DEFAULT_DATA_DIR;
}

const CycleStateLibrary& CycleStateLibrary::shared() {
  static const CycleStateLibrary library = load_or_synthesize(default_data_dir());
  return library;
}

void CycleStateLibrary::save(const std::filesystem::path& dir) const {
  write_cached(dir, "rho3", rho3_, verify_lemma5(rho3_, 3));
  write_cached(dir, "rho5", rho5_, verify_lemma5(rho5_, 5));
  write_cached(dir, "psi", psi_, verify_psi(psi_));
}

std::shared_ptr<const MixtureProductState> CycleStateLibrary::cycle_state(int k) const {
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("cycle states exist for odd k >= 3 only");
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->states[k];
  if (!slot) {
    if (k == 3) {
      slot = std::make_shared<const MixtureProductState>(MixtureProductState::single(rho3_));
    } else if (k == 5) {
      slot = std::make_shared<const MixtureProductState>(MixtureProductState::single(rho5_));
    } else {
      auto mixture = shift_averaged_cycle(k, psi_);
      // Pairs at cycle distance >= 5 never share a block once k >= 11.
      if (k >= 11) mixture = with_correlated_admixture(mixture, kCorrelatedAdmixture);
      slot = std::make_shared<const MixtureProductState>(std::move(mixture));
    }
  }
  return slot;
}

}  // namespace epr
