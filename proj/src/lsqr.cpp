#include <cmath>

#include "pencileig/lsq.hpp"
#include "shifted_operator.hpp"

namespace pencileig {

LsqSolution<DenseVector> lsqr_solve(const MatrixPencil& p, Complex z, const DenseVector& rhs,
                                    const LsqConfig& cfg) {
  if (rhs.size() != p.rows()) throw Error(ErrorCode::DimensionMismatch, "lsqr_solve: rhs has wrong length");
  cfg.validate();
  const detail::ShiftedOperator op(p, z);
  const Index max_iters = cfg.iteration_limit(p.rows(), p.cols());
  LsqSolution<DenseVector> out{DenseVector::Zero(p.cols()), {}};
  LsqReport& report = out.report;

  // Golub-Kahan bidiagonalization; alpha, beta are norms so every scalar below is real.
  DenseVector u = rhs;
  double beta = u.norm();
  if (beta == 0.0) {
    report.converged = true;
    return out;
  }
  u /= beta;
  DenseVector v = op.adjoint(u).col(0);
  double alpha = v.norm();
  if (alpha == 0.0) {
    report.converged = true;
    return out;
  }
  v /= alpha;
  DenseVector w = v;
  double phi_bar = beta;
  double rho_bar = alpha;
  const double normal0 = alpha * beta;
  detail::StagnationGuard guard(cfg.stagnation_window);
  double metric = 1.0;

  for (Index k = 1; k <= max_iters; ++k) {
    u = op.apply(v).col(0) - alpha * u;
    beta = u.norm();
    if (beta > 0.0) u /= beta;
    v = op.adjoint(u).col(0) - beta * v;
    alpha = v.norm();
    if (alpha > 0.0) v /= alpha;

    const double rho = std::hypot(rho_bar, beta);
    const double c = rho_bar / rho;
    const double s = beta / rho;
    const double theta = s * alpha;
    rho_bar = -c * alpha;
    const double phi = c * phi_bar;
    phi_bar = s * phi_bar;

    out.x += (phi / rho) * w;
    w = v - (theta / rho) * w;

    // ||A^H r_k|| = phi_bar * alpha * |c|
    const double normal = phi_bar * alpha * std::abs(c);
    metric = normal / normal0;
    report.iterations = k;
    if (cfg.record_history) {
      report.residual_history.push_back(phi_bar);
      report.normal_residual_history.push_back(normal);
    }
    if (metric <= cfg.rel_tol) {
      report.converged = true;
      break;
    }
    if (guard.update(k, metric)) {
      report.stagnated = true;
      break;
    }
  }
  report.final_rel_residual = metric;
  return out;
}

}  // namespace pencileig
