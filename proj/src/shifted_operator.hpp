#pragma once

#include "pencileig/pencil.hpp"

namespace pencileig::detail {

// zB - A as a linear operator. Dense pencils are materialized once so each
// product costs a single matvec; sparse pencils stay implicit.
class ShiftedOperator {
 public:
  ShiftedOperator(const MatrixPencil& p, Complex z) : pencil_(p), z_(z) {
    if (!p.is_sparse()) shifted_ = p.materialize(z);
  }

  Index rows() const { return pencil_.rows(); }
  Index cols() const { return pencil_.cols(); }

  DenseMatrix apply(const DenseMatrix& x) const {
    if (shifted_.size() > 0) return shifted_ * x;
    return pencil_apply(pencil_, z_, x);
  }

  DenseMatrix adjoint(const DenseMatrix& y) const {
    if (shifted_.size() > 0) return shifted_.adjoint() * y;
    return pencil_apply_adjoint(pencil_, z_, y);
  }

 private:
  const MatrixPencil& pencil_;
  Complex z_;
  DenseMatrix shifted_;
};

// Tracks the 10%-improvement stagnation rule.
class StagnationGuard {
 public:
  explicit StagnationGuard(Index window) : window_(window) {}

  // Returns true when the iteration should stop.
  bool update(Index iteration, double metric) {
    if (metric < 0.9 * reference_) {
      reference_ = metric;
      reference_iter_ = iteration;
    }
    return iteration - reference_iter_ >= window_;
  }

 private:
  Index window_;
  double reference_ = 1.0;
  Index reference_iter_ = 0;
};

}  // namespace pencileig::detail
