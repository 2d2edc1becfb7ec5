#pragma once

#include <cstdint>
#include <vector>

#include "pencileig/kronecker.hpp"

namespace pencileig {

/// Circle |z - center| = radius bounding the region of interest.
struct Region {
  Complex center{1.0, 1.0};
  double radius = 1.0;
  bool contains(Complex z) const { return std::abs(z - center) < radius; }
};

/// Explicit P and Q with P (zB - A) Q in Kronecker canonical form, plus the
/// block layout of the canonical pencil.
struct KroneckerFactors {
  DenseMatrix p_matrix;  // m x m
  DenseMatrix q_matrix;  // n x n
  std::vector<KroneckerBlock> blocks;

  /// Inverts the stored embedding. Throws when a factor is numerically
  /// singular (condition estimate >= 1e12).
  static KroneckerFactors from_truth(const GroundTruth& truth);

  /// Columns of Q belonging to right singular blocks.
  DenseMatrix q_singular() const;
  /// Rows of P belonging to left singular blocks.
  DenseMatrix p_singular() const;
};

/// Pi_{R(C)^perp} from a pivoted QR of C.
DenseMatrix complement_projector(const DenseMatrix& c);

/// Analytic k-th complex moment sum_i Qhat_i J_i^k Phat_i over the Jordan
/// blocks inside the region. Requires every singular block to have index 0.
/// Throws EigenvalueOnContour when an eigenvalue lies within 1e-8 * radius
/// of the circle.
DenseMatrix oracle_moment(const KroneckerFactors& kf, const Region& region, Index k);

/// Finite eigenvalues of the zero-padded square pencil by QZ. Pairs with
/// |beta| < 1e-8 max|alpha| are dropped. For nonsquare pencils each value is
/// then polished on the original pencil by a two-sided Rayleigh quotient.
/// max(m, n) must not exceed 500.
std::vector<Complex> oracle_dense_eig(const MatrixPencil& p);

struct StableEigenvalues {
  std::vector<Complex> values;
  /// Eigenvalues of the first run that had no partner in the second.
  std::vector<Complex> unstable;
};

/// oracle_dense_eig on two random unitary equivalences of the padded pencil;
/// only eigenvalues reproduced to `tol` (relative) in both runs are kept.
StableEigenvalues oracle_stable_eig(const MatrixPencil& p, std::uint64_t seed, double tol = 1e-8);

struct ReducedPencil {
  DenseMatrix w_m0_v;
  DenseMatrix w_m1_v;
  /// Eigenvalues of J inside the region, with multiplicity.
  Index t = 0;
  /// Numerical rank of W M_0 V.
  Index observed_rank = 0;
  bool rank_deficient() const { return observed_rank < t; }
};

/// (W M_0 V, W M_1 V) from oracle moments; W is L x n and V is m x L.
ReducedPencil hankel_reduced_pencil(const KroneckerFactors& kf, const Region& region, const DenseMatrix& w_probe,
                                    const DenseMatrix& v_probe);

/// Finite eigenvalues of a small dense pencil z b - a, with the same
/// |beta| < 1e-8 max|alpha| cutoff as the dense reference.
std::vector<Complex> finite_eigenvalues(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace pencileig
