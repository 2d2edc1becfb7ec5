#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pencileig/lsq.hpp"
#include "pencileig/pencil.hpp"

namespace pencileig {

struct QuadratureNode {
  Complex z;
  Complex w;
};

/// N-point trapezoidal rule for (1/2 pi i) \oint f(z) dz on |z - center| = radius:
/// z_j = center + radius e^{i theta_j}, theta_j = (2j - 1) pi / N, w_j = (z_j - center) / N.
std::vector<QuadratureNode> trapezoid_circle(Complex center, double radius, Index n);

struct ContourConfig {
  Complex center{1.0, 1.0};
  double radius = 1.0;
  Index num_quad = 48;
  Index probes = 4;
  Index moments = 2;
  LsqConfig lsq;
  std::uint64_t seed = 0;
  /// Membership test is |lambda - center| <= radius * (1 + region_margin).
  double region_margin = 0.0;
  /// Finite in-disk Ritz pairs with a larger relative residual norm are
  /// flagged spurious rather than reported as in-region eigenpairs.
  double residual_tol = 1e-8;
  /// Largest admissible sigma_1 / sigma_tau of the kept singular values.
  double cond_cap = 1.0 / kUnitRoundoff;
  /// OpenMP threads for the quadrature-node loop; 0 keeps the runtime default.
  int threads = 0;

  /// Throws unless the config is usable on an m x n pencil, including the
  /// L*M < min(m, n) subspace bound that solve() needs.
  void validate(Index m, Index n) const;
  /// Every check except the subspace bound; enough for moment assembly.
  void validate_quadrature() const;
};

/// S~ = [S~_0, ..., S~_{M-1}], S~_k = sum_j w_j z_j^k (z_j B - A)^+ V.
struct MomentBlocks {
  DenseMatrix s_tilde;
  std::vector<LsqReport> node_reports;
  std::vector<Index> failed_nodes;
};

/// Node solves run concurrently; the accumulation runs in node order so the
/// result does not depend on the thread count.
MomentBlocks assemble_moments(const MatrixPencil& p, const ContourConfig& cfg, const DenseMatrix& probes);

/// Single-threaded reference for assemble_moments with identical arithmetic.
MomentBlocks assemble_moments_serial(const MatrixPencil& p, const ContourConfig& cfg, const DenseMatrix& probes);

struct SubspaceBasis {
  DenseMatrix u1;
  Eigen::VectorXd sigma1;
  DenseMatrix v1;
  Index tau = 0;
  /// Every singular value of S~, for diagnostics.
  Eigen::VectorXd singular_values;
};

/// Keeps the largest tau with sigma_1 / sigma_tau <= cond_cap. Throws
/// EmptySubspace when s_tilde is identically zero.
SubspaceBasis truncate_svd(const DenseMatrix& s_tilde, double cond_cap = 1.0 / kUnitRoundoff);

/// Numerical rank with the conventional max(rows, cols) * u * sigma_1 cutoff.
Index numerical_rank(const Eigen::VectorXd& singular_values, Index rows, Index cols);

struct RitzValue {
  Complex alpha;
  Complex beta;
  /// alpha / beta, or infinity when the pair is not finite.
  Complex lambda;
  bool finite = false;
  DenseVector y;
};

/// All eigenpairs of T~^T A U1 y = lambda T~^T B U1 y (plain transpose).
std::vector<RitzValue> reduced_gep(const MatrixPencil& p, const DenseMatrix& u1, const DenseMatrix& t_tilde);

struct EigenPair {
  Complex lambda;
  DenseVector x;  // unit 2-norm
  /// ||beta A x - alpha B x|| / (|beta| ||A||_F + |alpha| ||B||_F); the usual
  /// relative residual norm for finite pairs.
  double rrn = 0.0;
  /// Finite, inside the (margin-widened) disk and rrn <= residual_tol.
  bool in_region = false;
  bool finite = true;
  /// Inside the disk but rejected by the residual test.
  bool spurious = false;
};

struct StepTimings {
  /// Wall seconds of the five algorithm steps: setup, moment assembly, SVD,
  /// reduced eigenproblem, Ritz vectors and residuals.
  double step[5] = {0, 0, 0, 0, 0};
  double total() const { return step[0] + step[1] + step[2] + step[3] + step[4]; }
};

struct SolveResult {
  /// Sorted by |lambda - center|; infinite pairs last.
  std::vector<EigenPair> pairs;
  Index tau = 0;
  Eigen::VectorXd singular_values;
  std::vector<Index> failed_nodes;
  std::vector<std::string> warnings;
  StepTimings timings;

  Index in_region_count() const;
  std::vector<Complex> in_region_eigenvalues() const;
  /// 0 when there is no in-region pair.
  double max_in_region_rrn() const;
};

/// Contour-integral projection for every finite eigenvalue of z B - A inside
/// the circle: probes, moment assembly, TSVD, reduced eigenproblem, Ritz pairs.
SolveResult solve(const MatrixPencil& p, const ContourConfig& cfg);

struct SweepRow {
  Index num_quad = 0;
  std::optional<double> max_rerr;
  double max_rrn = 0.0;
  double seconds = 0.0;
  Index found = 0;
};

/// Re-solves with each quadrature size and identical seeds. `reference`
/// holds the true in-region eigenvalues when known; the row errors are then
/// taken over the finite Ritz pairs matched to them (accepted or not),
/// otherwise over the in-region pairs.
std::vector<SweepRow> convergence_sweep(const MatrixPencil& p, const ContourConfig& cfg,
                                        const std::vector<Index>& num_quad_values,
                                        const std::optional<std::vector<Complex>>& reference = std::nullopt);

/// Largest relative error after pairing each reference eigenvalue with a
/// distinct computed one (greedy by distance); +inf when some reference has
/// no partner.
double max_relative_error(const std::vector<Complex>& computed, const std::vector<Complex>& reference);

}  // namespace pencileig
