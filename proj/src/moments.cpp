#include <exception>

#include <omp.h>

#include "pencileig/contour.hpp"

namespace pencileig {

namespace {

bool per_column(LsqMethod m) { return m == LsqMethod::Cgls || m == LsqMethod::Lsqr; }

void check_inputs(const MatrixPencil& p, const ContourConfig& cfg, const DenseMatrix& probes) {
  cfg.validate_quadrature();
  if (probes.rows() != p.rows() || probes.cols() != cfg.probes)
    throw Error(ErrorCode::DimensionMismatch, "probe block must be m x L");
  if (!probes.allFinite()) throw Error(ErrorCode::NonFinite, "probe block has NaN/Inf entries");
}

LsqSolution<DenseVector> solve_column(const MatrixPencil& p, Complex z, const DenseVector& rhs,
                                      const LsqConfig& cfg, LsqMethod method) {
  return method == LsqMethod::Lsqr ? lsqr_solve(p, z, rhs, cfg) : cgls_solve(p, z, rhs, cfg);
}

// Ordered reduction over node index, shared by both drivers.
MomentBlocks accumulate(const std::vector<QuadratureNode>& nodes, const std::vector<DenseMatrix>& solutions,
                        std::vector<LsqReport> reports, Index n, Index probes, Index moments) {
  MomentBlocks out;
  out.s_tilde = DenseMatrix::Zero(n, probes * moments);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Complex weight = nodes[j].w;
    for (Index k = 0; k < moments; ++k) {
      out.s_tilde.middleCols(k * probes, probes) += weight * solutions[j];
      weight *= nodes[j].z;
    }
    if (!reports[j].converged) out.failed_nodes.push_back(static_cast<Index>(j));
  }
  out.node_reports = std::move(reports);
  if (4 * static_cast<Index>(out.failed_nodes.size()) > static_cast<Index>(nodes.size()))
    throw Error(ErrorCode::TooManyFailedNodes, std::to_string(out.failed_nodes.size()) + " of " +
                                                   std::to_string(nodes.size()) +
                                                   " quadrature nodes did not converge");
  return out;
}

}  // namespace

MomentBlocks assemble_moments(const MatrixPencil& p, const ContourConfig& cfg, const DenseMatrix& probes) {
  check_inputs(p, cfg, probes);
  const auto nodes = trapezoid_circle(cfg.center, cfg.radius, cfg.num_quad);
  const LsqMethod method = cfg.lsq.resolve(p.rows(), p.cols());
  const Index num_nodes = static_cast<Index>(nodes.size());
  const Index columns = probes.cols();
  // one task per node, or per (node, column) for single-vector solvers
  const Index split = per_column(method) ? columns : 1;
  const Index tasks = num_nodes * split;

  std::vector<DenseMatrix> solutions(nodes.size(), DenseMatrix(p.cols(), columns));
  std::vector<LsqReport> task_reports(static_cast<std::size_t>(tasks));
  std::exception_ptr error;
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (Index task = 0; task < tasks; ++task) {
    try {
      const Index j = task / split;
      const Complex z = nodes[static_cast<std::size_t>(j)].z;
      if (split == 1) {
        auto sol = apply_pseudoinverse(p, z, probes, cfg.lsq);
        solutions[static_cast<std::size_t>(j)] = std::move(sol.x);
        task_reports[static_cast<std::size_t>(task)] = std::move(sol.report);
      } else {
        const Index col = task % split;
        auto sol = solve_column(p, z, probes.col(col), cfg.lsq, method);
        solutions[static_cast<std::size_t>(j)].col(col) = sol.x;
        task_reports[static_cast<std::size_t>(task)] = std::move(sol.report);
      }
    } catch (...) {
#pragma omp critical(pencileig_moment_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  std::vector<LsqReport> reports;
  reports.reserve(nodes.size());
  for (Index j = 0; j < num_nodes; ++j) {
    if (split == 1) {
      reports.push_back(std::move(task_reports[static_cast<std::size_t>(j)]));
    } else {
      std::vector<LsqReport> cols(task_reports.begin() + j * split, task_reports.begin() + (j + 1) * split);
      reports.push_back(merge_reports(cols));
    }
  }
  return accumulate(nodes, solutions, std::move(reports), p.cols(), columns, cfg.moments);
}

MomentBlocks assemble_moments_serial(const MatrixPencil& p, const ContourConfig& cfg, const DenseMatrix& probes) {
  check_inputs(p, cfg, probes);
  const auto nodes = trapezoid_circle(cfg.center, cfg.radius, cfg.num_quad);
  const LsqMethod method = cfg.lsq.resolve(p.rows(), p.cols());
  std::vector<DenseMatrix> solutions;
  std::vector<LsqReport> reports;
  for (const auto& node : nodes) {
    if (per_column(method)) {
      DenseMatrix y(p.cols(), probes.cols());
      std::vector<LsqReport> cols;
      for (Index c = 0; c < probes.cols(); ++c) {
        auto sol = solve_column(p, node.z, probes.col(c), cfg.lsq, method);
        y.col(c) = sol.x;
        cols.push_back(std::move(sol.report));
      }
      solutions.push_back(std::move(y));
      reports.push_back(merge_reports(cols));
    } else {
      auto sol = apply_pseudoinverse(p, node.z, probes, cfg.lsq);
      solutions.push_back(std::move(sol.x));
      reports.push_back(std::move(sol.report));
    }
  }
  return accumulate(nodes, solutions, std::move(reports), p.cols(), probes.cols(), cfg.moments);
}

}  // namespace pencileig
