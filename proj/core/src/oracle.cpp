#include "epr/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "epr/errors.hpp"
#include "epr/fractional_matching.hpp"
#include "epr/rounding.hpp"

namespace epr {

DenseHamiltonian::DenseHamiltonian(const WeightedGraph& g) : n_(g.num_vertices()) {
  if (n_ > kMaxOracleQubits) {
    throw InputError("exact Hamiltonian is capped at " + std::to_string(kMaxOracleQubits) + " qubits");
  }
  for (const Edge& e : g.edges()) {
    terms_.push_back({e.u, e.v, e.weight});
    weight_sum_ += e.weight;
  }
}

DenseHamiltonian build_hamiltonian(const WeightedGraph& g) { return DenseHamiltonian(g); }

std::vector<std::size_t> DenseHamiltonian::sector_indices(int parity) const {
  std::vector<std::size_t> idx;
  for (std::size_t x = 0; x < (std::size_t{1} << n_); ++x)
    if ((std::popcount(x) & 1) == parity) idx.push_back(x);
  return idx;
}

Eigen::MatrixXd DenseHamiltonian::sector(int parity) const {
  const auto idx = sector_indices(parity);
  std::vector<Eigen::Index> position(std::size_t{1} << n_, -1);
  for (std::size_t p = 0; p < idx.size(); ++p) position[idx[p]] = static_cast<Eigen::Index>(p);
  const auto d = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (const Term& t : terms_) {
    const int bi = n_ - 1 - t.i;
    const int bj = n_ - 1 - t.j;
    const std::size_t mask = (std::size_t{1} << bi) | (std::size_t{1} << bj);
    for (Eigen::Index p = 0; p < d; ++p) {
      const std::size_t x = idx[static_cast<std::size_t>(p)];
      if (((x >> bi) & 1) != ((x >> bj) & 1)) continue;
      h(p, p) += 0.5 * t.w;
      h(p, position[x ^ mask]) += 0.5 * t.w;
    }
  }
  return h;
}

Eigen::MatrixXd DenseHamiltonian::dense() const {
  if (n_ > 12) throw InputError("dense materialization is capped at 12 qubits");
  const auto dim = Eigen::Index{1} << n_;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (const Term& t : terms_) {
    const int bi = n_ - 1 - t.i;
    const int bj = n_ - 1 - t.j;
    const Eigen::Index mask = (Eigen::Index{1} << bi) | (Eigen::Index{1} << bj);
    for (Eigen::Index x = 0; x < dim; ++x) {
      if (((x >> bi) & 1) != ((x >> bj) & 1)) continue;
      h(x, x) += 0.5 * t.w;
      h(x, x ^ mask) += 0.5 * t.w;
    }
  }
  return h;
}

Eigen::VectorXd DenseHamiltonian::apply(const Eigen::VectorXd& v) const {
  const auto dim = Eigen::Index{1} << n_;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (const Term& t : terms_) {
    const int bi = n_ - 1 - t.i;
    const int bj = n_ - 1 - t.j;
    const Eigen::Index mask = (Eigen::Index{1} << bi) | (Eigen::Index{1} << bj);
    for (Eigen::Index x = 0; x < dim; ++x) {
      if (((x >> bi) & 1) != ((x >> bj) & 1)) continue;
      out(x) += 0.5 * t.w * (v(x) + v(x ^ mask));
    }
  }
  return out;
}

namespace {

GroundState dense_ground_state(const DenseHamiltonian& h) {
  const int n = h.num_qubits();
  const auto dim = Eigen::Index{1} << n;
  GroundState best;
  best.method = "dense";
  best.lambda_max = -std::numeric_limits<double>::infinity();
  for (int parity = 0; parity < 2; ++parity) {
    const auto idx = h.sector_indices(parity);
    if (idx.empty()) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h.sector(parity));
    const Eigen::Index top = eig.eigenvalues().size() - 1;
    if (eig.eigenvalues()(top) > best.lambda_max) {
      best.lambda_max = eig.eigenvalues()(top);
      best.vector = Eigen::VectorXd::Zero(dim);
      for (std::size_t p = 0; p < idx.size(); ++p)
        best.vector(static_cast<Eigen::Index>(idx[p])) = eig.eigenvectors()(static_cast<Eigen::Index>(p), top);
    }
  }
  return best;
}

// Lanczos with full reorthogonalization from the uniform vector, which has
// positive overlap with the Perron vector of the nonnegative matrix H.
GroundState lanczos_ground_state(const DenseHamiltonian& h) {
  const auto dim = Eigen::Index{1} << h.num_qubits();
  const int max_steps = static_cast<int>(std::min<Eigen::Index>(dim, 300));
  const double scale = std::max(h.weight_sum(), 1e-300);
  Eigen::MatrixXd basis(dim, max_steps);
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXd q = Eigen::VectorXd::Ones(dim) / std::sqrt(static_cast<double>(dim));
  GroundState result;
  result.method = "lanczos";
  for (int step = 0; step < max_steps; ++step) {
    basis.col(step) = q;
    Eigen::VectorXd w = h.apply(q);
    alpha.push_back(q.dot(w));
    for (int pass = 0; pass < 2; ++pass) w -= basis.leftCols(step + 1) * (basis.leftCols(step + 1).transpose() * w);
    const double b = w.norm();
    const int m = step + 1;
    const bool last = m == max_steps || b < 1e-13 * scale;
    if (m % 5 == 0 || last) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
      const double estimate = std::abs(b * eig.eigenvectors()(m - 1, m - 1));
      if (estimate < 1e-11 * scale || last) {
        result.lambda_max = eig.eigenvalues()(m - 1);
        result.vector = basis.leftCols(m) * eig.eigenvectors().col(m - 1);
        result.vector.normalize();
        return result;
      }
    }
    beta.push_back(b);
    q = w / b;
  }
  return result;
}

}  // namespace

GroundState lambda_max(const DenseHamiltonian& h) {
  GroundState gs;
  if (h.num_qubits() == 0) {
    gs.lambda_max = 0.0;
    gs.vector = Eigen::VectorXd::Ones(1);
    gs.method = "dense";
    return gs;
  }
  gs = h.num_qubits() <= kMaxDenseEigenQubits ? dense_ground_state(h) : lanczos_ground_state(h);
  gs.residual = (h.apply(gs.vector) - gs.lambda_max * gs.vector).norm();
  return gs;
}

Eigen::MatrixXd pair_energy_table(const Eigen::VectorXd& state, int n) {
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(n, n);
  const auto dim = Eigen::Index{1} << n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int bi = n - 1 - i;
      const int bj = n - 1 - j;
      const Eigen::Index mask = (Eigen::Index{1} << bi) | (Eigen::Index{1} << bj);
      double e = 0.0;
      for (Eigen::Index x = 0; x < dim; ++x) {
        if (((x >> bi) & 1) != ((x >> bj) & 1)) continue;
        e += 0.5 * state(x) * (state(x) + state(x ^ mask));
      }
      table(i, j) = table(j, i) = e;
    }
  }
  return table;
}

double max_star_sum(const Eigen::MatrixXd& pair_energies) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < pair_energies.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < pair_energies.cols(); ++j)
      if (j != i) sum += std::max(0.0, 2.0 * pair_energies(i, j) - 1.0);
    worst = std::max(worst, sum);
  }
  return worst;
}

nlohmann::json RatioReport::to_json() const {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"schema_version", 1},
          {"constants", AlgorithmConstants::get().to_json()},
          {"n", n},
          {"edges", num_edges},
          {"lp_value", lp_value},
          {"upper_bound", upper_bound},
          {"achieved", achieved},
          {"lp_ratio", lp_ratio},
          {"lambda_max", opt(lambda_max)},
          {"exact_ratio", opt(exact_ratio)},
          {"star_sum", opt(star_sum)},
          {"min_edge_ratio", min_edge_ratio},
          {"pass", pass}};
}

RatioReport measure_ratio(const WeightedGraph& g, const CycleStateLibrary& library) {
  const double alpha = AlgorithmConstants::get().alpha;
  const auto s = solve_lp(g);
  const auto rs = round(g, s, library);
  const auto cert = certify(g, s, rs);
  RatioReport report;
  report.n = g.num_vertices();
  report.num_edges = g.num_edges();
  report.lp_value = s.lp_value;
  report.upper_bound = cert.upper_bound;
  report.achieved = cert.achieved_total;
  report.lp_ratio = cert.total_ratio;
  report.min_edge_ratio = cert.edges.empty() ? 1.0 : cert.min_ratio;
  report.pass = cert.pass;
  if (g.num_vertices() <= kMaxOracleQubits) {
    const auto gs = lambda_max(build_hamiltonian(g));
    report.lambda_max = gs.lambda_max;
    report.exact_ratio = gs.lambda_max > 0.0 ? cert.achieved_total / gs.lambda_max : 1.0;
    report.star_sum = max_star_sum(pair_energy_table(gs.vector, g.num_vertices()));
    report.pass = report.pass && *report.exact_ratio >= alpha - 1e-9;
  }
  return report;
}

namespace {

template <class Scalar>
Scalar weight_of(const Edge& e) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return e.exact_weight;
  } else {
    return e.weight;
  }
}

template <class Scalar>
struct HalfSearch {
  const std::vector<Edge>& edges;
  std::vector<Scalar> suffix;  // sum of weights from index i on
  std::vector<int> capacity;   // remaining halves per vertex
  Scalar best{0};

  void run(std::size_t i, const Scalar& value) {
    if (value > best) best = value;
    if (i == edges.size() || !(value + suffix[i] > best)) return;
    const Edge& e = edges[i];
    const int room = std::min(capacity[e.u], capacity[e.v]);
    for (int h = room; h >= 0; --h) {
      capacity[e.u] -= h;
      capacity[e.v] -= h;
      run(i + 1, value + weight_of<Scalar>(e) * Scalar(h) / Scalar(2));
      capacity[e.u] += h;
      capacity[e.v] += h;
    }
  }
};

template <class Scalar>
Scalar brute_lp(const WeightedGraph& g) {
  if (g.num_edges() > kMaxBruteForceEdges) {
    throw InputError("brute-force LP is capped at " + std::to_string(kMaxBruteForceEdges) + " edges");
  }
  HalfSearch<Scalar> search{g.edges(), {}, std::vector<int>(g.num_vertices(), 2)};
  search.suffix.assign(g.num_edges() + 1, Scalar(0));
  for (std::size_t i = g.num_edges(); i-- > 0;) search.suffix[i] = search.suffix[i + 1] + weight_of<Scalar>(g.edges()[i]);
  search.run(0, Scalar(0));
  return search.best;
}

template <class Scalar>
Scalar brute_matching(const WeightedGraph& g) {
  const auto& edges = g.edges();
  std::vector<char> used(g.num_vertices(), 0);
  Scalar best(0);
  auto recurse = [&](auto&& self, std::size_t i, const Scalar& value) -> void {
    if (value > best) best = value;
    for (std::size_t k = i; k < edges.size(); ++k) {
      const Edge& e = edges[k];
      if (used[e.u] || used[e.v]) continue;
      used[e.u] = used[e.v] = 1;
      self(self, k + 1, value + weight_of<Scalar>(e));
      used[e.u] = used[e.v] = 0;
    }
  };
  recurse(recurse, 0, Scalar(0));
  return best;
}

}  // namespace

double brute_force_lp(const WeightedGraph& g) { return brute_lp<double>(g); }
Rational brute_force_lp_exact(const WeightedGraph& g) { return brute_lp<Rational>(g); }
double brute_force_matching(const WeightedGraph& g) { return brute_matching<double>(g); }
Rational brute_force_matching_exact(const WeightedGraph& g) { return brute_matching<Rational>(g); }

}  // namespace epr
