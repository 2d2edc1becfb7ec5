#pragma once

#include "pencileig/types.hpp"

namespace pencileig::dense {

/// Thin SVD a = u * diag(sigma) * v^H with sigma decreasing.
struct Svd {
  DenseMatrix u;
  Eigen::VectorXd sigma;
  DenseMatrix v;
};

/// LAPACK divide-and-conquer SVD, falling back to QR-iteration SVD when it
/// does not converge.
Svd thin_svd(const DenseMatrix& a);
Eigen::VectorXd singular_values(const DenseMatrix& a);

/// Generalized eigenpairs of a x = lambda b x via QZ; lambda = alpha / beta.
struct GeneralizedEig {
  DenseVector alpha;
  DenseVector beta;
  DenseMatrix vectors;  // right eigenvectors, empty unless requested
};

GeneralizedEig qz(const DenseMatrix& a, const DenseMatrix& b, bool want_vectors);

}  // namespace pencileig::dense
