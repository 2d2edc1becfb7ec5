#pragma once

#include <optional>
#include <vector>

#include "pencileig/pencil.hpp"

namespace pencileig {

enum class LsqMethod { Auto, DensePinv, Cgls, Lsqr, GlobalCgls };

const char* to_string(LsqMethod method);
LsqMethod parse_lsq_method(const std::string& name);

struct LsqConfig {
  /// Auto picks DensePinv below size_crossover and GlobalCgls above.
  LsqMethod method = LsqMethod::Auto;
  /// Threshold on ||(zB-A)^H r|| / ||(zB-A)^H b||.
  double rel_tol = 1e-14;
  /// Defaults to min(m, n).
  std::optional<Index> max_iters;
  Index size_crossover = 1000;
  /// Stop when the metric has not dropped by 10% within this many iterations.
  Index stagnation_window = 50;
  bool record_history = false;

  void validate() const;
  Index iteration_limit(Index m, Index n) const;
  LsqMethod resolve(Index m, Index n) const;
};

struct LsqReport {
  Index iterations = 0;
  double final_rel_residual = 0.0;
  bool converged = false;
  bool stagnated = false;
  /// ||r_k||_F and ||(zB-A)^H r_k||_F per iteration, when requested.
  std::vector<double> residual_history;
  std::vector<double> normal_residual_history;
};

/// Worst-case merge used when several columns are solved separately.
LsqReport merge_reports(const std::vector<LsqReport>& reports);

template <typename T>
struct LsqSolution {
  T x;
  LsqReport report;
};

/// Minimum-norm least squares through a full SVD of zB - A; singular values
/// below u * max(m, n) * sigma_max are treated as zero.
LsqSolution<DenseMatrix> pinv_apply_dense(const MatrixPencil& p, Complex z, const DenseMatrix& rhs);

/// CGLS from a zero initial guess.
LsqSolution<DenseVector> cgls_solve(const MatrixPencil& p, Complex z, const DenseVector& rhs,
                                    const LsqConfig& cfg);

/// Paige-Saunders LSQR from a zero initial guess.
LsqSolution<DenseVector> lsqr_solve(const MatrixPencil& p, Complex z, const DenseVector& rhs,
                                    const LsqConfig& cfg);

/// Global CGLS: CG on the normal equations with the Frobenius inner product,
/// sharing step lengths across all right-hand sides.
LsqSolution<DenseMatrix> global_cgls_solve(const MatrixPencil& p, Complex z, const DenseMatrix& rhs,
                                           const LsqConfig& cfg);

/// (zB - A)^+ rhs with the method chosen by cfg.
LsqSolution<DenseMatrix> apply_pseudoinverse(const MatrixPencil& p, Complex z, const DenseMatrix& rhs,
                                             const LsqConfig& cfg);

}  // namespace pencileig
