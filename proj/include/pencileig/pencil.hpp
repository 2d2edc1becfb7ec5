#pragma once

#include <variant>

#include "pencileig/types.hpp"

namespace pencileig {

/// A complex m-by-n matrix held either densely (column-major) or as a
/// compressed sparse column matrix. Values are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() : storage_(DenseMatrix(0, 0)) {}
  explicit ComplexMatrix(DenseMatrix dense);
  explicit ComplexMatrix(SparseMatrix sparse);

  /// Assemble from triplets; duplicate (row, col) entries are summed.
  static ComplexMatrix from_triplets(Index rows, Index cols,
                                     const std::vector<Eigen::Triplet<Complex, Index>>& entries);

  Index rows() const;
  Index cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(storage_); }
  Index nonzeros() const;

  const DenseMatrix& dense() const { return std::get<DenseMatrix>(storage_); }
  const SparseMatrix& sparse() const { return std::get<SparseMatrix>(storage_); }
  DenseMatrix to_dense() const;
  SparseMatrix to_sparse() const;

  double frobenius_norm() const;

  /// out = this * x
  DenseMatrix multiply(const DenseMatrix& x) const;
  /// out = this^H * y
  DenseMatrix adjoint_multiply(const DenseMatrix& y) const;

 private:
  std::variant<DenseMatrix, SparseMatrix> storage_;
};

/// The linear pencil z B - A with A, B of identical shape.
class MatrixPencil {
 public:
  MatrixPencil(ComplexMatrix a, ComplexMatrix b);

  const ComplexMatrix& a() const { return a_; }
  const ComplexMatrix& b() const { return b_; }
  Index rows() const { return a_.rows(); }
  Index cols() const { return a_.cols(); }
  bool is_sparse() const { return a_.is_sparse() || b_.is_sparse(); }
  double norm_a() const { return norm_a_; }
  double norm_b() const { return norm_b_; }

  /// Dense z B - A.
  DenseMatrix materialize(Complex z) const;

 private:
  ComplexMatrix a_;
  ComplexMatrix b_;
  double norm_a_;
  double norm_b_;
};

/// (z B - A) x, columnwise for block arguments.
DenseMatrix pencil_apply(const MatrixPencil& p, Complex z, const DenseMatrix& x);
DenseVector pencil_apply(const MatrixPencil& p, Complex z, const DenseVector& x);

/// (z B - A)^H y
DenseMatrix pencil_apply_adjoint(const MatrixPencil& p, Complex z, const DenseMatrix& y);
DenseVector pencil_apply_adjoint(const MatrixPencil& p, Complex z, const DenseVector& y);

/// ||A x - lambda B x||_2 / ((||A||_F + |lambda| ||B||_F) ||x||_2). Throws on x = 0.
double rrn(const MatrixPencil& p, Complex lambda, const DenseVector& x);

struct RelativeError {
  double value = 0.0;
  /// Set when the reference is zero and `value` is the absolute error.
  bool absolute = false;
};

RelativeError relative_error(Complex computed, Complex reference);

}  // namespace pencileig
