#include "pencileig/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/QR>

#include "pencileig/contour.hpp"
#include "pencileig/dense.hpp"
#include "pencileig/rng.hpp"

namespace pencileig {

namespace {

constexpr double kSpuriousBeta = 1e-8;
constexpr Index kDenseOracleLimit = 500;
constexpr double kFactorCondLimit = 1e12;
constexpr int kPolishSteps = 3;
constexpr double kPolishMaxStep = 1e-6;

DenseMatrix invert_checked(const ComplexMatrix& m, const char* what) {
  const DenseMatrix d = m.to_dense();
  if (d.rows() != d.cols()) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is not square");
  const Eigen::PartialPivLU<DenseMatrix> lu(d);
  const double rcond = lu.rcond();
  if (!(rcond > 1.0 / kFactorCondLimit))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " is numerically singular");
  return lu.inverse();
}

DenseMatrix jordan_power(Complex lambda, Index size, Index k) {
  DenseMatrix j = DenseMatrix::Zero(size, size);
  for (Index i = 0; i < size; ++i) {
    j(i, i) = lambda;
    if (i + 1 < size) j(i, i + 1) = 1.0;
  }
  DenseMatrix out = DenseMatrix::Identity(size, size);
  for (Index i = 0; i < k; ++i) out = out * j;
  return out;
}

// Zero padding to a square pencil: extra zero rows when m < n, extra zero
// columns when m > n.
std::pair<DenseMatrix, DenseMatrix> padded(const MatrixPencil& p) {
  const Index s = std::max(p.rows(), p.cols());
  DenseMatrix a = DenseMatrix::Zero(s, s);
  DenseMatrix b = DenseMatrix::Zero(s, s);
  a.topLeftCorner(p.rows(), p.cols()) = p.a().to_dense();
  b.topLeftCorner(p.rows(), p.cols()) = p.b().to_dense();
  return {std::move(a), std::move(b)};
}

DenseMatrix haar_unitary(Index n, Rng& rng) {
  const DenseMatrix g = rng.complex_normal_matrix(n, n);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ();
  // fix the phases so the distribution is exactly Haar
  const DenseMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

// Generic rank of z b - a, sampled at two fixed points off any likely spectrum.
Index normal_rank(const DenseMatrix& a, const DenseMatrix& b) {
  const double na = a.norm();
  const double nb = b.norm();
  const double scale = nb > 0.0 ? std::max(na / nb, 1.0) : 1.0;
  Index rank = 0;
  for (Complex z : {Complex(0.7390851332, 0.5671432904), Complex(-0.4428544010, 1.3247179572)}) {
    const DenseMatrix zb_a = (z * scale) * b - a;
    rank = std::max(rank, numerical_rank(dense::singular_values(zb_a), zb_a.rows(), zb_a.cols()));
  }
  return rank;
}

// Two-sided Rayleigh quotient with the singular vectors of lambda b - a at the
// normal-rank index. A step is kept only while it is small and lowers that
// singular value, so values far from any true eigenvalue stay put.
void polish(const DenseMatrix& a, const DenseMatrix& b, std::vector<Complex>& eigs) {
  const Index nr = normal_rank(a, b);
  if (nr == 0) return;
  for (Complex& lam : eigs) {
    dense::Svd cur = dense::thin_svd(lam * b - a);
    for (int it = 0; it < kPolishSteps; ++it) {
      const double sigma = cur.sigma(nr - 1);
      if (sigma == 0.0) break;
      const Complex ubv = cur.u.col(nr - 1).dot(b * cur.v.col(nr - 1));
      if (ubv == 0.0) break;
      const Complex step = sigma / ubv;
      if (std::abs(step) > kPolishMaxStep * std::max(1.0, std::abs(lam))) break;
      dense::Svd next = dense::thin_svd((lam - step) * b - a);
      if (!(next.sigma(nr - 1) < sigma)) break;
      lam -= step;
      cur = std::move(next);
    }
  }
}

void check_oracle_size(const MatrixPencil& p) {
  if (std::max(p.rows(), p.cols()) > kDenseOracleLimit)
    throw Error(ErrorCode::SizeExceeded, "dense oracle is limited to max(m, n) <= 500");
}

}  // namespace

KroneckerFactors KroneckerFactors::from_truth(const GroundTruth& truth) {
  KroneckerFactors kf;
  kf.p_matrix = invert_checked(truth.p_inv, "left embedding");
  kf.q_matrix = invert_checked(truth.q_inv, "right embedding");
  kf.blocks = truth.blocks;
  return kf;
}

DenseMatrix KroneckerFactors::q_singular() const {
  std::vector<Index> cols;
  for (const auto& blk : blocks)
    if (blk.kind == BlockKind::RightSingularZero)
      for (Index j = 0; j < blk.cols; ++j) cols.push_back(blk.col_offset + j);
  DenseMatrix out(q_matrix.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Index>(j)) = q_matrix.col(cols[j]);
  return out;
}

DenseMatrix KroneckerFactors::p_singular() const {
  std::vector<Index> rows;
  for (const auto& blk : blocks)
    if (blk.kind == BlockKind::LeftSingularZero || blk.kind == BlockKind::LeftSingular)
      for (Index i = 0; i < blk.rows; ++i) rows.push_back(blk.row_offset + i);
  DenseMatrix out(static_cast<Index>(rows.size()), p_matrix.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = p_matrix.row(rows[i]);
  return out;
}

DenseMatrix complement_projector(const DenseMatrix& c) {
  DenseMatrix proj = DenseMatrix::Identity(c.rows(), c.rows());
  if (c.cols() == 0) return proj;
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(c);
  const Index rank = qr.rank();
  if (rank == 0) return proj;
  const DenseMatrix basis = DenseMatrix(qr.householderQ()).leftCols(rank);
  proj.noalias() -= basis * basis.adjoint();
  return proj;
}

DenseMatrix oracle_moment(const KroneckerFactors& kf, const Region& region, Index k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
  for (const auto& blk : kf.blocks) {
    if (blk.kind == BlockKind::LeftSingular)
      throw Error(ErrorCode::InvalidArgument, "moment oracle requires singular blocks of index 0");
    if (blk.kind == BlockKind::Finite &&
        std::abs(std::abs(blk.eigenvalue - region.center) - region.radius) <= 1e-8 * region.radius)
      throw Error(ErrorCode::EigenvalueOnContour, "eigenvalue lies on the contour");
  }
  const DenseMatrix pi_q = complement_projector(kf.q_singular());
  const DenseMatrix pi_p = complement_projector(kf.p_singular().adjoint());
  DenseMatrix m = DenseMatrix::Zero(kf.q_matrix.rows(), kf.p_matrix.cols());
  for (const auto& blk : kf.blocks) {
    if (blk.kind != BlockKind::Finite || !region.contains(blk.eigenvalue)) continue;
    const DenseMatrix q_hat = pi_q * kf.q_matrix.middleCols(blk.col_offset, blk.cols);
    const DenseMatrix p_hat = kf.p_matrix.middleRows(blk.row_offset, blk.rows) * pi_p;
    m.noalias() += q_hat * jordan_power(blk.eigenvalue, blk.rows, k) * p_hat;
  }
  return m;
}

std::vector<Complex> finite_eigenvalues(const DenseMatrix& a, const DenseMatrix& b) {
  const dense::GeneralizedEig eig = dense::qz(a, b, false);
  const double alpha_max = eig.alpha.size() > 0 ? eig.alpha.cwiseAbs().maxCoeff() : 0.0;
  std::vector<Complex> out;
  for (Index i = 0; i < eig.alpha.size(); ++i)
    if (std::abs(eig.beta(i)) >= kSpuriousBeta * alpha_max && std::abs(eig.beta(i)) > 0.0)
      out.push_back(eig.alpha(i) / eig.beta(i));
  return out;
}

std::vector<Complex> oracle_dense_eig(const MatrixPencil& p) {
  check_oracle_size(p);
  const auto [a, b] = padded(p);
  std::vector<Complex> eigs = finite_eigenvalues(a, b);
  if (p.rows() != p.cols()) polish(p.a().to_dense(), p.b().to_dense(), eigs);
  return eigs;
}

StableEigenvalues oracle_stable_eig(const MatrixPencil& p, std::uint64_t seed, double tol) {
  check_oracle_size(p);
  const auto [a, b] = padded(p);
  const DenseMatrix pa = p.a().to_dense();
  const DenseMatrix pb = p.b().to_dense();
  std::vector<Complex> runs[2];
  for (std::uint64_t run = 0; run < 2; ++run) {
    Rng rng(seed, Stream::Padding, run);
    const DenseMatrix left = haar_unitary(a.rows(), rng);
    const DenseMatrix right = haar_unitary(a.cols(), rng);
    runs[run] = finite_eigenvalues(left * a * right, left * b * right);
    if (p.rows() != p.cols()) polish(pa, pb, runs[run]);
  }
  StableEigenvalues out;
  std::vector<bool> used(runs[1].size(), false);
  for (const Complex& lam : runs[0]) {
    std::size_t best = runs[1].size();
    double best_dist = 0.0;
    for (std::size_t j = 0; j < runs[1].size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(runs[1][j] - lam);
      if (best == runs[1].size() || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best < runs[1].size() && best_dist <= tol * std::max(1.0, std::abs(lam))) {
      used[best] = true;
      out.values.push_back(lam);
    } else {
      out.unstable.push_back(lam);
    }
  }
  return out;
}

ReducedPencil hankel_reduced_pencil(const KroneckerFactors& kf, const Region& region, const DenseMatrix& w_probe,
                                    const DenseMatrix& v_probe) {
  if (w_probe.cols() != kf.q_matrix.rows() || v_probe.rows() != kf.p_matrix.cols() ||
      w_probe.rows() != v_probe.cols())
    throw Error(ErrorCode::DimensionMismatch, "hankel_reduced_pencil: need W L x n and V m x L");
  ReducedPencil out;
  out.w_m0_v = w_probe * oracle_moment(kf, region, 0) * v_probe;
  out.w_m1_v = w_probe * oracle_moment(kf, region, 1) * v_probe;
  for (const auto& blk : kf.blocks)
    if (blk.kind == BlockKind::Finite && region.contains(blk.eigenvalue)) out.t += blk.rows;
  // relative cutoff loose enough for the roundoff of the embedded products
  const Eigen::VectorXd sv = dense::singular_values(out.w_m0_v);
  if (sv.size() > 0 && sv(0) > 0.0) out.observed_rank = static_cast<Index>((sv.array() > 1e-10 * sv(0)).count());
  return out;
}

}  // namespace pencileig
