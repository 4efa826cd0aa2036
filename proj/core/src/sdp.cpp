#include "epr/sdp.hpp"

#include <cmath>
#include <stdexcept>

namespace epr::sdp {
namespace {

const double kSqrt2 = std::sqrt(2.0);

struct Layout {
  std::vector<Eigen::Index> block_offset;
  Eigen::Index slack_offset = 0;
  Eigen::Index scalar_offset = 0;
  Eigen::Index size = 0;
  int num_slacks = 0;
};

Eigen::Index svec_size(int d) { return static_cast<Eigen::Index>(d) * (d + 1) / 2; }

// Upper triangle, row-major; off-diagonals scaled by sqrt(2) so that the
// Euclidean inner product matches the trace inner product.
void pack(const Eigen::MatrixXd& m, Eigen::Ref<Eigen::VectorXd> out) {
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out(k++) = m(i, i);
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) out(k++) = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
  }
}

Eigen::MatrixXd unpack(const Eigen::Ref<const Eigen::VectorXd>& v, int d) {
  Eigen::MatrixXd m(d, d);
  Eigen::Index k = 0;
  for (int i = 0; i < d; ++i) {
    m(i, i) = v(k++);
    for (int j = i + 1; j < d; ++j) {
      m(i, j) = m(j, i) = v(k++) / kSqrt2;
    }
  }
  return m;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  Eigen::VectorXd values = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

Layout make_layout(const Problem& p) {
  Layout layout;
  Eigen::Index offset = 0;
  for (int d : p.block_sizes) {
    if (d < 1) throw std::invalid_argument("SDP block sizes must be positive");
    layout.block_offset.push_back(offset);
    offset += svec_size(d);
  }
  layout.slack_offset = offset;
  for (const auto& c : p.constraints)
    if (c.sense == Sense::greater_equal) ++layout.num_slacks;
  layout.scalar_offset = layout.slack_offset + layout.num_slacks;
  layout.size = layout.scalar_offset + p.num_scalars;
  return layout;
}

Eigen::VectorXd vectorize(const Problem& p, const Layout& layout, const std::vector<Eigen::MatrixXd>& blocks,
                          const Eigen::VectorXd& scalars) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(layout.size);
  for (std::size_t b = 0; b < blocks.size() && b < p.block_sizes.size(); ++b) {
    if (blocks[b].size() == 0) continue;
    const int d = p.block_sizes[b];
    if (blocks[b].rows() != d || blocks[b].cols() != d) throw std::invalid_argument("coefficient block has wrong size");
    pack(blocks[b], row.segment(layout.block_offset[b], svec_size(d)));
  }
  if (scalars.size() > 0) {
    if (scalars.size() != p.num_scalars) throw std::invalid_argument("scalar coefficient vector has wrong size");
    row.segment(layout.scalar_offset, p.num_scalars) = scalars;
  }
  return row;
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  const Layout layout = make_layout(problem);
  const auto m = static_cast<Eigen::Index>(problem.constraints.size());
  const Eigen::Index n = layout.size;

  Eigen::MatrixXd a(m, n);
  Eigen::VectorXd b(m);
  int slack = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Constraint& c = problem.constraints[static_cast<std::size_t>(i)];
    a.row(i) = vectorize(problem, layout, c.block_coeffs, c.scalar_coeffs).transpose();
    if (c.sense == Sense::greater_equal) a(i, layout.slack_offset + slack++) = -1.0;
    b(i) = c.rhs;
  }
  const Eigen::VectorXd cost = vectorize(problem, layout, problem.block_objective, problem.scalar_objective);

  // Affine projection y - A^T (A A^T)^+ (A y - b).
  const Eigen::MatrixXd gram = a * a.transpose();
  const Eigen::MatrixXd gram_pinv = gram.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::MatrixXd correction = a.transpose() * gram_pinv;
  auto project_affine = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd { return y - correction * (a * y - b); };

  auto project_cone = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd out = y;
    for (std::size_t blk = 0; blk < problem.block_sizes.size(); ++blk) {
      const int d = problem.block_sizes[blk];
      auto seg = out.segment(layout.block_offset[blk], svec_size(d));
      pack(project_psd(unpack(seg, d)), seg);
    }
    out.segment(layout.slack_offset, layout.num_slacks) =
        out.segment(layout.slack_offset, layout.num_slacks).cwiseMax(0.0);
    return out;
  };

  double rho = options.rho;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  Solution result;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const Eigen::VectorXd v = project_affine(z - u + cost / rho);
    const Eigen::VectorXd relaxed = options.relaxation * v + (1.0 - options.relaxation) * z;
    const Eigen::VectorXd z_next = project_cone(relaxed + u);
    u += relaxed - z_next;
    result.iterations = iter;
    if (iter % options.check_interval == 0) {
      const double primal = (v - z_next).norm();
      const double dual = rho * (z_next - z).norm();
      result.primal_residual = primal;
      result.dual_residual = dual;
      if (primal < options.tolerance && dual < options.tolerance) {
        z = z_next;
        result.converged = true;
        break;
      }
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        u /= 2.0;
      } else if (dual > 10.0 * primal) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
    z = z_next;
  }

  for (std::size_t blk = 0; blk < problem.block_sizes.size(); ++blk) {
    const int d = problem.block_sizes[blk];
    result.blocks.push_back(unpack(z.segment(layout.block_offset[blk], svec_size(d)), d));
  }
  result.scalars = z.segment(layout.scalar_offset, problem.num_scalars);
  result.objective = cost.dot(z);
  return result;
}

}  // namespace epr::sdp
