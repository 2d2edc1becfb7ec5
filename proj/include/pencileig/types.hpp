#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace pencileig {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, Eigen::Index>;
using Index = Eigen::Index;

/// Unit roundoff of IEEE double, 2^-53.
inline constexpr double kUnitRoundoff = 1.1102230246251565e-16;

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  NonFinite,
  InfeasibleDensity,
  SvdFailure,
  QzFailure,
  TooManyFailedNodes,
  EmptySubspace,
  EigenvalueOnContour,
  SizeExceeded,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code);

/// Structured error carried by every failing operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pencileig
