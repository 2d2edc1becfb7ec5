#include "pencileig/pencil.hpp"

#include <cmath>

namespace pencileig {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::NonFinite: return "non-finite value";
    case ErrorCode::InfeasibleDensity: return "infeasible density";
    case ErrorCode::SvdFailure: return "SVD failure";
    case ErrorCode::QzFailure: return "QZ failure";
    case ErrorCode::TooManyFailedNodes: return "too many failed quadrature nodes";
    case ErrorCode::EmptySubspace: return "empty subspace";
    case ErrorCode::EigenvalueOnContour: return "eigenvalue on contour";
    case ErrorCode::SizeExceeded: return "size exceeded";
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::IoError: return "I/O error";
  }
  return "unknown error";
}

namespace {

bool all_finite(const Complex* values, Index count) {
  for (Index i = 0; i < count; ++i)
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) return false;
  return true;
}

}  // namespace

ComplexMatrix::ComplexMatrix(DenseMatrix dense) : storage_(std::move(dense)) {
  const auto& d = std::get<DenseMatrix>(storage_);
  if (!all_finite(d.data(), d.size())) throw Error(ErrorCode::NonFinite, "dense matrix has NaN/Inf entries");
}

ComplexMatrix::ComplexMatrix(SparseMatrix sparse) : storage_(std::move(sparse)) {
  auto& s = std::get<SparseMatrix>(storage_);
  s.makeCompressed();
  if (!all_finite(s.valuePtr(), s.nonZeros())) throw Error(ErrorCode::NonFinite, "sparse matrix has NaN/Inf entries");
}

ComplexMatrix ComplexMatrix::from_triplets(Index rows, Index cols,
                                           const std::vector<Eigen::Triplet<Complex, Index>>& entries) {
  for (const auto& t : entries)
    if (t.row() < 0 || t.row() >= rows || t.col() < 0 || t.col() >= cols)
      throw Error(ErrorCode::DimensionMismatch, "triplet index out of range");
  SparseMatrix s(rows, cols);
  s.setFromTriplets(entries.begin(), entries.end());
  return ComplexMatrix(std::move(s));
}

Index ComplexMatrix::rows() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.rows()); }, storage_);
}

Index ComplexMatrix::cols() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.cols()); }, storage_);
}

Index ComplexMatrix::nonzeros() const {
  if (is_sparse()) return sparse().nonZeros();
  const auto& d = dense();
  return static_cast<Index>((d.array() != Complex(0.0)).count());
}

DenseMatrix ComplexMatrix::to_dense() const {
  if (is_sparse()) return DenseMatrix(sparse());
  return dense();
}

SparseMatrix ComplexMatrix::to_sparse() const {
  if (is_sparse()) return sparse();
  return dense().sparseView();
}

double ComplexMatrix::frobenius_norm() const {
  return std::visit([](const auto& m) { return m.norm(); }, storage_);
}

DenseMatrix ComplexMatrix::multiply(const DenseMatrix& x) const {
  if (x.rows() != cols()) throw Error(ErrorCode::DimensionMismatch, "multiply: operand rows != matrix cols");
  return std::visit([&](const auto& m) -> DenseMatrix { return m * x; }, storage_);
}

DenseMatrix ComplexMatrix::adjoint_multiply(const DenseMatrix& y) const {
  if (y.rows() != rows()) throw Error(ErrorCode::DimensionMismatch, "adjoint_multiply: operand rows != matrix rows");
  return std::visit([&](const auto& m) -> DenseMatrix { return m.adjoint() * y; }, storage_);
}

MatrixPencil::MatrixPencil(ComplexMatrix a, ComplexMatrix b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.rows() || a_.cols() != b_.cols())
    throw Error(ErrorCode::DimensionMismatch, "pencil matrices A and B differ in shape");
  norm_a_ = a_.frobenius_norm();
  norm_b_ = b_.frobenius_norm();
}

DenseMatrix MatrixPencil::materialize(Complex z) const {
  return z * b_.to_dense() - a_.to_dense();
}

DenseMatrix pencil_apply(const MatrixPencil& p, Complex z, const DenseMatrix& x) {
  if (x.rows() != p.cols()) throw Error(ErrorCode::DimensionMismatch, "pencil_apply: x has wrong length");
  DenseMatrix out = p.b().multiply(x);
  out *= z;
  out -= p.a().multiply(x);
  return out;
}

DenseVector pencil_apply(const MatrixPencil& p, Complex z, const DenseVector& x) {
  return pencil_apply(p, z, DenseMatrix(x)).col(0);
}

DenseMatrix pencil_apply_adjoint(const MatrixPencil& p, Complex z, const DenseMatrix& y) {
  if (y.rows() != p.rows()) throw Error(ErrorCode::DimensionMismatch, "pencil_apply_adjoint: y has wrong length");
  DenseMatrix out = p.b().adjoint_multiply(y);
  out *= std::conj(z);
  out -= p.a().adjoint_multiply(y);
  return out;
}

DenseVector pencil_apply_adjoint(const MatrixPencil& p, Complex z, const DenseVector& y) {
  return pencil_apply_adjoint(p, z, DenseMatrix(y)).col(0);
}

double rrn(const MatrixPencil& p, Complex lambda, const DenseVector& x) {
  if (x.size() != p.cols()) throw Error(ErrorCode::DimensionMismatch, "rrn: x has wrong length");
  if (x.squaredNorm() == 0.0) throw Error(ErrorCode::InvalidArgument, "rrn: zero vector");
  // A x - lambda B x = -(lambda B - A) x
  const double residual = pencil_apply(p, lambda, x).norm();
  const double scale = p.norm_a() + std::abs(lambda) * p.norm_b();
  const double r = residual / x.norm();
  return scale > 0.0 ? r / scale : r;
}

RelativeError relative_error(Complex computed, Complex reference) {
  const double diff = std::abs(computed - reference);
  const double ref = std::abs(reference);
  if (ref == 0.0) return {diff, true};
  return {diff / ref, false};
}

}  // namespace pencileig
