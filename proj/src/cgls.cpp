#include <cmath>

#include "pencileig/lsq.hpp"
#include "shifted_operator.hpp"

namespace pencileig {

namespace {

// CG on the normal equations of op for every column at once, with scalar step
// lengths from Frobenius inner products. One column gives plain CGLS.
LsqSolution<DenseMatrix> global_cgls_kernel(const detail::ShiftedOperator& op, const DenseMatrix& rhs,
                                            const LsqConfig& cfg) {
  cfg.validate();
  const Index max_iters = cfg.iteration_limit(op.rows(), op.cols());
  LsqSolution<DenseMatrix> out{DenseMatrix::Zero(op.cols(), rhs.cols()), {}};
  LsqReport& report = out.report;

  DenseMatrix r = rhs;
  DenseMatrix s = op.adjoint(r);
  double gamma = s.squaredNorm();
  const double normal0 = std::sqrt(gamma);
  if (normal0 == 0.0) {
    report.converged = true;
    return out;
  }
  DenseMatrix dir = s;
  detail::StagnationGuard guard(cfg.stagnation_window);
  double metric = 1.0;

  for (Index k = 1; k <= max_iters; ++k) {
    const DenseMatrix q = op.apply(dir);
    const double delta = q.squaredNorm();
    if (delta == 0.0) break;
    const double alpha = gamma / delta;
    out.x += alpha * dir;
    r -= alpha * q;
    s = op.adjoint(r);
    const double gamma_next = s.squaredNorm();
    metric = std::sqrt(gamma_next) / normal0;
    report.iterations = k;
    if (cfg.record_history) {
      report.residual_history.push_back(r.norm());
      report.normal_residual_history.push_back(std::sqrt(gamma_next));
    }
    if (metric <= cfg.rel_tol) {
      report.converged = true;
      break;
    }
    if (guard.update(k, metric)) {
      report.stagnated = true;
      break;
    }
    dir = s + (gamma_next / gamma) * dir;
    gamma = gamma_next;
  }
  report.final_rel_residual = metric;
  return out;
}

}  // namespace

LsqSolution<DenseVector> cgls_solve(const MatrixPencil& p, Complex z, const DenseVector& rhs,
                                    const LsqConfig& cfg) {
  if (rhs.size() != p.rows()) throw Error(ErrorCode::DimensionMismatch, "cgls_solve: rhs has wrong length");
  auto block = global_cgls_kernel(detail::ShiftedOperator(p, z), DenseMatrix(rhs), cfg);
  return {block.x.col(0), std::move(block.report)};
}

LsqSolution<DenseMatrix> global_cgls_solve(const MatrixPencil& p, Complex z, const DenseMatrix& rhs,
                                           const LsqConfig& cfg) {
  if (rhs.rows() != p.rows()) throw Error(ErrorCode::DimensionMismatch, "global_cgls_solve: rhs has wrong rows");
  return global_cgls_kernel(detail::ShiftedOperator(p, z), rhs, cfg);
}

}  // namespace pencileig
