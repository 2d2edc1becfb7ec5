#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "pencileig/contour.hpp"
#include "pencileig/dense.hpp"
#include "pencileig/rng.hpp"

namespace pencileig {

void ContourConfig::validate_quadrature() const {
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag()))
    throw Error(ErrorCode::InvalidArgument, "center must be finite");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  if (num_quad < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 quadrature points");
  if (probes < 1 || moments < 1) throw Error(ErrorCode::InvalidArgument, "L and M must be positive");
  if (region_margin < 0.0) throw Error(ErrorCode::InvalidArgument, "region_margin must be nonnegative");
  if (!(residual_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "residual_tol must be positive");
  if (!(cond_cap >= 1.0)) throw Error(ErrorCode::InvalidArgument, "cond_cap must be >= 1");
  if (threads < 0) throw Error(ErrorCode::InvalidArgument, "threads must be nonnegative");
  lsq.validate();
}

void ContourConfig::validate(Index m, Index n) const {
  validate_quadrature();
  if (probes * moments >= std::min(m, n))
    throw Error(ErrorCode::InvalidArgument, "L*M = " + std::to_string(probes * moments) +
                                                " must be smaller than min(m, n) = " + std::to_string(std::min(m, n)));
}

SubspaceBasis truncate_svd(const DenseMatrix& s_tilde, double cond_cap) {
  if (s_tilde.size() == 0 || s_tilde.cwiseAbs().maxCoeff() == 0.0)
    throw Error(ErrorCode::EmptySubspace, "no eigenvalues in region or probes deficient");
  const dense::Svd svd = dense::thin_svd(s_tilde);
  SubspaceBasis out;
  out.singular_values = svd.sigma;
  const double sigma_max = svd.sigma(0);
  Index tau = 0;
  while (tau < svd.sigma.size() && svd.sigma(tau) > 0.0 && sigma_max / svd.sigma(tau) <= cond_cap) ++tau;
  out.tau = tau;
  out.u1 = svd.u.leftCols(tau);
  out.sigma1 = svd.sigma.head(tau);
  out.v1 = svd.v.leftCols(tau);
  return out;
}

Index numerical_rank(const Eigen::VectorXd& singular_values, Index rows, Index cols) {
  if (singular_values.size() == 0) return 0;
  const double cutoff =
      static_cast<double>(std::max(rows, cols)) * 2.0 * kUnitRoundoff * singular_values(0);
  return static_cast<Index>((singular_values.array() > cutoff).count());
}

namespace {

// |lambda| above 1e13 is reported as infinite
constexpr double kInfiniteRatio = 1e-13;

bool is_finite_pair(Complex alpha, Complex beta) {
  return std::abs(beta) > kInfiniteRatio * std::abs(alpha) && std::abs(beta) > 0.0;
}

double homogeneous_residual(const MatrixPencil& p, Complex alpha, Complex beta, const DenseVector& x) {
  const DenseVector r = beta * p.a().multiply(x).col(0) - alpha * p.b().multiply(x).col(0);
  const double scale = std::abs(beta) * p.norm_a() + std::abs(alpha) * p.norm_b();
  return scale > 0.0 ? r.norm() / scale : r.norm();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<RitzValue> reduced_gep(const MatrixPencil& p, const DenseMatrix& u1, const DenseMatrix& t_tilde) {
  if (u1.rows() != p.cols() || t_tilde.rows() != p.rows() || u1.cols() != t_tilde.cols() || u1.cols() < 1)
    throw Error(ErrorCode::DimensionMismatch, "reduced_gep: need U1 n x tau and T m x tau with tau >= 1");
  const DenseMatrix ta = t_tilde.transpose() * p.a().multiply(u1);
  const DenseMatrix tb = t_tilde.transpose() * p.b().multiply(u1);
  const dense::GeneralizedEig eig = dense::qz(ta, tb, true);
  std::vector<RitzValue> out;
  out.reserve(static_cast<std::size_t>(eig.alpha.size()));
  for (Index i = 0; i < eig.alpha.size(); ++i) {
    RitzValue v;
    v.alpha = eig.alpha(i);
    v.beta = eig.beta(i);
    v.finite = is_finite_pair(v.alpha, v.beta);
    v.lambda = v.finite ? v.alpha / v.beta : Complex(std::numeric_limits<double>::infinity(), 0.0);
    v.y = eig.vectors.col(i);
    out.push_back(std::move(v));
  }
  return out;
}

Index SolveResult::in_region_count() const {
  return static_cast<Index>(std::count_if(pairs.begin(), pairs.end(), [](const EigenPair& e) { return e.in_region; }));
}

std::vector<Complex> SolveResult::in_region_eigenvalues() const {
  std::vector<Complex> out;
  for (const auto& e : pairs)
    if (e.in_region) out.push_back(e.lambda);
  return out;
}

double SolveResult::max_in_region_rrn() const {
  double worst = 0.0;
  for (const auto& e : pairs)
    if (e.in_region) worst = std::max(worst, e.rrn);
  return worst;
}

SolveResult solve(const MatrixPencil& p, const ContourConfig& cfg) {
  using clock = std::chrono::steady_clock;
  cfg.validate(p.rows(), p.cols());
  SolveResult result;

  // Step 1: probes
  auto t0 = clock::now();
  Rng probe_rng(cfg.seed, Stream::Probe);
  const DenseMatrix probes = probe_rng.complex_normal_matrix(p.rows(), cfg.probes);
  result.timings.step[0] = seconds_since(t0);

  // Step 2: moments
  t0 = clock::now();
  MomentBlocks moments = assemble_moments(p, cfg, probes);
  result.failed_nodes = moments.failed_nodes;
  if (!moments.failed_nodes.empty())
    result.warnings.push_back(std::to_string(moments.failed_nodes.size()) +
                              " quadrature node solve(s) did not reach the tolerance");
  result.timings.step[1] = seconds_since(t0);

  // Step 3: TSVD
  t0 = clock::now();
  if (moments.s_tilde.cwiseAbs().maxCoeff() == 0.0) {
    result.warnings.push_back("moment matrix is zero; no eigenvalues detected");
    result.timings.step[2] = seconds_since(t0);
    return result;
  }
  SubspaceBasis basis = truncate_svd(moments.s_tilde, cfg.cond_cap);
  result.tau = basis.tau;
  result.singular_values = basis.singular_values;
  if (basis.tau < cfg.probes * cfg.moments)
    result.warnings.push_back("moment subspace is rank deficient: tau = " + std::to_string(basis.tau) + " < L*M = " +
                              std::to_string(cfg.probes * cfg.moments));
  result.timings.step[2] = seconds_since(t0);
  if (basis.tau == 0) return result;

  // Step 4: reduced eigenproblem
  t0 = clock::now();
  Rng test_rng(cfg.seed, Stream::TestMatrix);
  const DenseMatrix t_tilde = test_rng.complex_normal_matrix(p.rows(), basis.tau);
  std::vector<RitzValue> ritz = reduced_gep(p, basis.u1, t_tilde);
  result.timings.step[3] = seconds_since(t0);

  // Step 5: Ritz vectors
  t0 = clock::now();
  const double admit = cfg.radius * (1.0 + cfg.region_margin);
  for (const RitzValue& rv : ritz) {
    EigenPair pair;
    pair.finite = rv.finite;
    pair.lambda = rv.lambda;
    pair.x = basis.u1 * rv.y;
    const double norm = pair.x.norm();
    if (norm > 0.0) pair.x /= norm;
    pair.rrn = norm > 0.0 ? homogeneous_residual(p, rv.alpha, rv.beta, pair.x)
                          : std::numeric_limits<double>::infinity();
    const bool inside = rv.finite && std::abs(rv.lambda - cfg.center) <= admit;
    pair.in_region = inside && pair.rrn <= cfg.residual_tol;
    pair.spurious = inside && !pair.in_region;
    result.pairs.push_back(std::move(pair));
  }
  std::stable_sort(result.pairs.begin(), result.pairs.end(), [&](const EigenPair& a, const EigenPair& b) {
    if (a.finite != b.finite) return a.finite;
    if (!a.finite) return false;
    return std::abs(a.lambda - cfg.center) < std::abs(b.lambda - cfg.center);
  });
  result.timings.step[4] = seconds_since(t0);
  return result;
}

double max_relative_error(const std::vector<Complex>& computed, const std::vector<Complex>& reference) {
  if (reference.empty()) return 0.0;
  if (computed.size() < reference.size()) return std::numeric_limits<double>::infinity();
  struct Candidate {
    double distance;
    std::size_t ref, cmp;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < reference.size(); ++i)
    for (std::size_t j = 0; j < computed.size(); ++j)
      candidates.push_back({std::abs(reference[i] - computed[j]), i, j});
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.distance < b.distance; });
  std::vector<bool> ref_used(reference.size(), false);
  std::vector<bool> cmp_used(computed.size(), false);
  double worst = 0.0;
  std::size_t matched = 0;
  for (const auto& c : candidates) {
    if (ref_used[c.ref] || cmp_used[c.cmp]) continue;
    ref_used[c.ref] = cmp_used[c.cmp] = true;
    worst = std::max(worst, relative_error(computed[c.cmp], reference[c.ref]).value);
    if (++matched == reference.size()) break;
  }
  return worst;
}

}  // namespace pencileig
