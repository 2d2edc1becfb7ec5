#include "pencileig/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "pencileig/dense.hpp"
#include "pencileig/rng.hpp"

namespace pencileig {

namespace {

constexpr Index kBaselineDenseLimit = 2000;
constexpr double kSpuriousBeta = 1e-8;

struct Squared {
  DenseMatrix a;
  DenseMatrix b;
  DenseMatrix v;  // random factor for F1 and F3, empty otherwise
};

void check_shape(const MatrixPencil& p, BaselineKind kind) {
  const bool wide = kind == BaselineKind::F1RightProject || kind == BaselineKind::F2ZeroPadRows;
  if (wide && !(p.rows() < p.cols()))
    throw Error(ErrorCode::DimensionMismatch, std::string(to_string(kind)) + " needs m < n");
  if (!wide && !(p.rows() > p.cols()))
    throw Error(ErrorCode::DimensionMismatch, std::string(to_string(kind)) + " needs m > n");
  if (std::max(p.rows(), p.cols()) > kBaselineDenseLimit)
    throw Error(ErrorCode::SizeExceeded, "baselines are limited to max(m, n) <= 2000");
}

Squared square_up(const MatrixPencil& p, BaselineKind kind, std::uint64_t seed) {
  const DenseMatrix a = p.a().to_dense();
  const DenseMatrix b = p.b().to_dense();
  const Index m = p.rows();
  const Index n = p.cols();
  Squared s;
  switch (kind) {
    case BaselineKind::F1RightProject: {
      Rng rng(seed, Stream::Baseline, 1);
      s.v = rng.complex_normal_matrix(n, m);
      s.a = a * s.v;
      s.b = b * s.v;
      break;
    }
    case BaselineKind::F2ZeroPadRows:
      s.a = DenseMatrix::Zero(n, n);
      s.b = DenseMatrix::Zero(n, n);
      s.a.topRows(m) = a;
      s.b.topRows(m) = b;
      break;
    case BaselineKind::F3LeftProject: {
      Rng rng(seed, Stream::Baseline, 3);
      s.v = rng.complex_normal_matrix(n, m);
      s.a = s.v * a;
      s.b = s.v * b;
      break;
    }
    case BaselineKind::F4ZeroPadCols:
      s.a = DenseMatrix::Zero(m, m);
      s.b = DenseMatrix::Zero(m, m);
      s.a.leftCols(n) = a;
      s.b.leftCols(n) = b;
      break;
  }
  return s;
}

// Eigenvector of the squared pencil back to C^n.
DenseVector map_back(BaselineKind kind, const Squared& s, const DenseVector& y, Index n) {
  switch (kind) {
    case BaselineKind::F1RightProject:
      return s.v * y;
    case BaselineKind::F4ZeroPadCols:
      return y.head(n);
    default:
      return y;
  }
}

EigenPair make_pair(const MatrixPencil& p, Complex lambda, DenseVector x, bool in_region) {
  EigenPair e;
  e.lambda = lambda;
  const double norm = x.norm();
  e.x = norm > 0.0 ? DenseVector(x / norm) : x;
  e.rrn = norm > 0.0 ? rrn(p, lambda, e.x) : std::numeric_limits<double>::infinity();
  e.in_region = in_region;
  return e;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const char* to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::F1RightProject:
      return "f1";
    case BaselineKind::F2ZeroPadRows:
      return "f2";
    case BaselineKind::F3LeftProject:
      return "f3";
    case BaselineKind::F4ZeroPadCols:
      return "f4";
  }
  return "?";
}

BaselineKind parse_baseline(const std::string& name, bool& contour) {
  contour = false;
  if (name == "f1") return BaselineKind::F1RightProject;
  if (name == "f2") return BaselineKind::F2ZeroPadRows;
  if (name == "f3") return BaselineKind::F3LeftProject;
  if (name == "f4") return BaselineKind::F4ZeroPadCols;
  contour = true;
  if (name == "f1p") return BaselineKind::F1RightProject;
  if (name == "f3p") return BaselineKind::F3LeftProject;
  throw Error(ErrorCode::ParseError, "unknown baseline '" + name + "'");
}

Index BaselineResult::in_region_count() const {
  return static_cast<Index>(std::count_if(pairs.begin(), pairs.end(), [](const EigenPair& e) { return e.in_region; }));
}

std::vector<Complex> BaselineResult::in_region_eigenvalues() const {
  std::vector<Complex> out;
  for (const auto& e : pairs)
    if (e.in_region) out.push_back(e.lambda);
  return out;
}

double BaselineResult::max_in_region_rrn() const {
  double worst = 0.0;
  for (const auto& e : pairs)
    if (e.in_region) worst = std::max(worst, e.rrn);
  return worst;
}

BaselineResult run_baseline(const MatrixPencil& p, BaselineKind kind, const Region& region, std::uint64_t seed) {
  check_shape(p, kind);
  const auto t0 = std::chrono::steady_clock::now();
  const Squared s = square_up(p, kind, seed);
  const dense::GeneralizedEig eig = dense::qz(s.a, s.b, true);
  const double alpha_max = eig.alpha.size() > 0 ? eig.alpha.cwiseAbs().maxCoeff() : 0.0;
  BaselineResult out;
  out.name = to_string(kind);
  for (Index i = 0; i < eig.alpha.size(); ++i) {
    const double beta = std::abs(eig.beta(i));
    if (!(beta > 0.0) || beta < kSpuriousBeta * alpha_max) continue;
    const Complex lambda = eig.alpha(i) / eig.beta(i);
    out.pairs.push_back(
        make_pair(p, lambda, map_back(kind, s, eig.vectors.col(i), p.cols()), region.contains(lambda)));
  }
  std::stable_sort(out.pairs.begin(), out.pairs.end(), [&](const EigenPair& a, const EigenPair& b) {
    return std::abs(a.lambda - region.center) < std::abs(b.lambda - region.center);
  });
  out.seconds = seconds_since(t0);
  return out;
}

BaselineResult run_baseline_contour(const MatrixPencil& p, BaselineKind kind, const ContourConfig& cfg) {
  if (kind != BaselineKind::F1RightProject && kind != BaselineKind::F3LeftProject)
    throw Error(ErrorCode::InvalidArgument, "contour variants exist for f1 and f3 only");
  check_shape(p, kind);
  const auto t0 = std::chrono::steady_clock::now();
  Squared s = square_up(p, kind, cfg.seed);
  const MatrixPencil squared(ComplexMatrix(std::move(s.a)), ComplexMatrix(std::move(s.b)));
  const SolveResult res = solve(squared, cfg);
  BaselineResult out;
  out.name = std::string(to_string(kind)) + "p";
  for (const EigenPair& e : res.pairs) {
    if (!e.finite) continue;
    out.pairs.push_back(make_pair(p, e.lambda, map_back(kind, s, e.x, p.cols()), e.in_region));
  }
  out.seconds = seconds_since(t0);
  return out;
}

}  // namespace pencileig
