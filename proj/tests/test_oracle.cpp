#include <algorithm>

#include "pencileig/contour.hpp"
#include "pencileig/dense.hpp"
#include "pencileig/oracle.hpp"
#include "generators.hpp"
#include "test_util.hpp"

using namespace pencileig;
using namespace pencileig::testing;

namespace {

GeneratedPencil generate(std::vector<FiniteEigenvalue> eigs, std::vector<Index> nil, Index q, Index r,
                         EmbeddingKind kind, std::uint64_t seed) {
  KroneckerSpec spec;
  spec.finite_eigs = std::move(eigs);
  spec.nilpotent_sizes = std::move(nil);
  spec.q = q;
  spec.r = r;
  spec.embed.kind = kind;
  spec.seed = seed;
  return make_kronecker_pencil(spec);
}

bool contains_close(const std::vector<Complex>& set, Complex value, double tol) {
  return std::any_of(set.begin(), set.end(),
                     [&](Complex c) { return std::abs(c - value) <= tol * std::max(1.0, std::abs(value)); });
}

}  // namespace

TEST(OracleMoment, SpectralProjectorOfDiagonalPencil) {
  const GeneratedPencil g = generate({{0.5, 1}, {3.0, 1}}, {}, 0, 0, EmbeddingKind::Identity, 0);
  const KroneckerFactors kf = KroneckerFactors::from_truth(g.truth);
  const Region region{0.0, 1.0};
  EXPECT_LE((oracle_moment(kf, region, 0) - diag({1.0, 0.0})).norm(), 1e-15);
  EXPECT_LE((oracle_moment(kf, region, 1) - diag({0.5, 0.0})).norm(), 1e-15);
}

TEST(OracleMoment, AgreesWithQuadrature) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const GeneratedPencil g =
        make_kronecker_pencil(separated_spec(3, 10, 10, 80, 10, {1.0, 1.0}, 1.0, {}, seed));
    const KroneckerFactors kf = KroneckerFactors::from_truth(g.truth);
    ContourConfig cfg;
    cfg.num_quad = 48;
    cfg.probes = 4;
    cfg.moments = 3;
    Rng rng(seed, Stream::Probe);
    const DenseMatrix v = rng.complex_normal_matrix(30, 4);
    const DenseMatrix s = assemble_moments(g.pencil, cfg, v).s_tilde;
    const Region region{cfg.center, cfg.radius};
    for (Index k = 0; k < 3; ++k) {
      const DenseMatrix ref = oracle_moment(kf, region, k) * v;
      if (ref.norm() == 0.0) continue;
      EXPECT_LE((s.middleCols(4 * k, 4) - ref).norm() / ref.norm(), 1e-8) << "seed " << seed << " k " << k;
    }
  }
}

TEST(OracleMoment, ProjectorIsIdempotent) {
  const GeneratedPencil g =
      generate({{0.5, 1}, {Complex(0.2, 0.3), 2}, {2.0, 1}, {Complex(-1, 3), 1}}, {}, 0, 0, EmbeddingKind::DenseGaussian, 3);
  const KroneckerFactors kf = KroneckerFactors::from_truth(g.truth);
  // M0 maps the range side back to the domain, so the projector is M0 B
  const DenseMatrix m0 = oracle_moment(kf, {0.0, 1.0}, 0) * g.pencil.b().to_dense();
  EXPECT_LE((m0 * m0 - m0).norm(), 1e-10 * m0.norm());
  EXPECT_NEAR(m0.trace().real(), 3.0, 1e-10);
}

TEST(OracleMoment, InfiniteBlocksContributeNothing) {
  const GeneratedPencil g = generate({{0.5, 1}, {2.0, 1}}, {3, 1}, 2, 1, EmbeddingKind::DenseGaussian, 4);
  KroneckerFactors with = KroneckerFactors::from_truth(g.truth);
  KroneckerFactors without = with;
  std::erase_if(without.blocks, [](const KroneckerBlock& b) { return b.kind == BlockKind::Infinite; });
  for (Index k = 0; k < 3; ++k) {
    const DenseMatrix a = oracle_moment(with, {0.0, 1.0}, k);
    EXPECT_LE((a - oracle_moment(without, {0.0, 1.0}, k)).norm(), 1e-12 * std::max(1.0, a.norm()));
  }
  // the resolvent of a nilpotent block is a polynomial, so its contour moments vanish
  DenseMatrix n = DenseMatrix::Zero(4, 4);
  for (Index i = 0; i < 3; ++i) n(i, i + 1) = 1.0;
  const MatrixPencil k_block = dense_pencil(DenseMatrix::Identity(4, 4), n);
  ContourConfig cfg;
  cfg.center = 0.0;
  cfg.radius = 1.0;
  cfg.num_quad = 32;
  cfg.probes = 4;
  cfg.moments = 3;
  const DenseMatrix s = assemble_moments(k_block, cfg, DenseMatrix::Identity(4, 4)).s_tilde;
  EXPECT_LE(s.norm(), 1e-12);
}

TEST(OracleMoment, PseudoinverseOfSelectedRows) {
  Rng rng(5, Stream::User);
  for (Index k : {1, 3, 5}) {
    const Index n = 7;
    const DenseMatrix c = rng.complex_normal_matrix(n, n);
    const DenseMatrix sel = c.inverse().topRows(k);
    const DenseMatrix lhs = sel.completeOrthogonalDecomposition().pseudoInverse();
    const DenseMatrix rhs = complement_projector(c.rightCols(n - k)) * c.leftCols(k);
    EXPECT_LE(rel_diff(lhs, rhs), 1e-10) << k;
  }
}

TEST(OracleMoment, ComplementProjector) {
  Rng rng(6, Stream::User);
  const DenseMatrix c = rng.complex_normal_matrix(6, 2);
  const DenseMatrix pi = complement_projector(c);
  EXPECT_LE((pi * c).norm(), 1e-13);
  EXPECT_LE((pi * pi - pi).norm(), 1e-13);
  EXPECT_NEAR(pi.trace().real(), 4.0, 1e-13);
  EXPECT_EQ(complement_projector(DenseMatrix(6, 0)), DenseMatrix(DenseMatrix::Identity(6, 6)));
}

TEST(OracleMoment, Errors) {
  const GeneratedPencil g = generate({{1.0, 1}, {0.2, 1}}, {}, 1, 0, EmbeddingKind::Identity, 0);
  const KroneckerFactors kf = KroneckerFactors::from_truth(g.truth);
  EXPECT_ERROR_CODE(oracle_moment(kf, {0.0, 1.0}, 0), ErrorCode::EigenvalueOnContour);
  EXPECT_ERROR_CODE(oracle_moment(kf, {0.0, 0.5}, -1), ErrorCode::InvalidArgument);
  const GeneratedPencil u = make_kronecker_pencil(KroneckerSpec::sampled(3, 3, 0, 1, 2, {}, 1));
  EXPECT_ERROR_CODE(oracle_moment(KroneckerFactors::from_truth(u.truth), {0.0, 1.0}, 0), ErrorCode::InvalidArgument);
}

TEST(KroneckerFactorsTest, BringPencilToCanonicalForm) {
  const GeneratedPencil g = generate({{0.5, 2}}, {2}, 2, 3, EmbeddingKind::DenseGaussian, 7);
  const KroneckerFactors kf = KroneckerFactors::from_truth(g.truth);
  const DenseMatrix a = kf.p_matrix * g.pencil.a().to_dense() * kf.q_matrix;
  EXPECT_NEAR(std::abs(a(0, 0) - 0.5), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(a(0, 1) - 1.0), 0.0, 1e-10);
  EXPECT_EQ(kf.q_singular().cols(), 2);
  EXPECT_EQ(kf.p_singular().rows(), 3);
  EXPECT_LE((g.pencil.a().to_dense() * kf.q_singular()).norm(), 1e-10 * g.pencil.norm_a());
  EXPECT_LE((kf.p_singular() * g.pencil.b().to_dense()).norm(), 1e-10 * g.pencil.norm_b());
}

TEST(DenseOracle, DiagonalRatios) {
  const auto eigs = oracle_dense_eig(dense_pencil(diag({2.0, 3.0, 1.0}), diag({1.0, 2.0, 0.0})));
  ASSERT_EQ(eigs.size(), 2u);
  EXPECT_TRUE(contains_close(eigs, 2.0, 1e-15));
  EXPECT_TRUE(contains_close(eigs, 1.5, 1e-15));
}

TEST(DenseOracle, ContainsGroundTruth) {
  const GeneratedPencil g = make_kronecker_pencil(KroneckerSpec::sampled(10, 10, 80, 10, 0, {}, 8));
  const auto eigs = oracle_dense_eig(g.pencil);
  for (Complex l : g.truth.finite_eigs) EXPECT_TRUE(contains_close(eigs, l, 1e-10)) << l;
}

TEST(DenseOracle, StableFilterRejectsPaddingArtifacts) {
  const GeneratedPencil g = make_kronecker_pencil(KroneckerSpec::sampled(6, 6, 20, 6, 0, {}, 9));
  const StableEigenvalues s = oracle_stable_eig(g.pencil, 9);
  for (Complex l : g.truth.finite_eigs) EXPECT_TRUE(contains_close(s.values, l, 1e-8)) << l;
  EXPECT_FALSE(s.unstable.empty());
  EXPECT_EQ(s.values.size(), g.truth.finite_eigs.size());
}

TEST(DenseOracle, SizeLimit) {
  EXPECT_ERROR_CODE(oracle_dense_eig(random_pencil(501, 3, 1)), ErrorCode::SizeExceeded);
  EXPECT_ERROR_CODE(oracle_stable_eig(random_pencil(3, 501, 1), 1), ErrorCode::SizeExceeded);
}

TEST(HankelPencil, SingleEigenvalueScalarProbes) {
  const GeneratedPencil g = generate({{0.5, 1}, {3.0, 1}}, {1}, 0, 0, EmbeddingKind::Identity, 0);
  const KroneckerFactors kf = KroneckerFactors::from_truth(g.truth);
  const DenseMatrix w = DenseMatrix::Ones(1, 3);
  const DenseMatrix v = DenseMatrix::Ones(3, 1);
  const ReducedPencil r = hankel_reduced_pencil(kf, {0.0, 1.0}, w, v);
  EXPECT_EQ(r.t, 1);
  EXPECT_FALSE(r.rank_deficient());
  const auto eigs = finite_eigenvalues(r.w_m1_v, r.w_m0_v);
  ASSERT_EQ(eigs.size(), 1u);
  EXPECT_NEAR(std::abs(eigs[0] - 0.5), 0.0, 1e-14);
}

TEST(HankelPencil, RecoversInteriorSpectrum) {
  const GeneratedPencil g = generate({{Complex(0.3, 0.2), 1}, {-0.4, 1}, {2.0, 1}}, {2}, 3, 2,
                                     EmbeddingKind::DenseGaussian, 10);
  const KroneckerFactors kf = KroneckerFactors::from_truth(g.truth);
  Rng rng(10, Stream::User);
  const Index m = g.pencil.rows(), n = g.pencil.cols();
  for (Index ell : {2, 3}) {
    const ReducedPencil r =
        hankel_reduced_pencil(kf, {0.0, 1.0}, rng.complex_normal_matrix(ell, n), rng.complex_normal_matrix(m, ell));
    EXPECT_EQ(r.t, 2);
    EXPECT_EQ(r.observed_rank, 2);
    const auto eigs = finite_eigenvalues(r.w_m1_v, r.w_m0_v);
    EXPECT_TRUE(contains_close(eigs, Complex(0.3, 0.2), 1e-10)) << ell;
    EXPECT_TRUE(contains_close(eigs, -0.4, 1e-10)) << ell;
    if (ell == 2) {
      EXPECT_EQ(eigs.size(), 2u);
    } else {
      // the third pair of the singular 3 x 3 pencil is pure roundoff
      const dense::GeneralizedEig all = dense::qz(r.w_m1_v, r.w_m0_v, false);
      const double scale = all.alpha.cwiseAbs().maxCoeff();
      Index degenerate = 0;
      for (Index i = 0; i < 3; ++i)
        if (std::abs(all.beta(i)) < 1e-8 * scale && std::abs(all.alpha(i)) < 1e-8 * scale) ++degenerate;
      EXPECT_EQ(degenerate, 1);
    }
  }
}

TEST(HankelPencil, ReportsRankDeficiency) {
  const GeneratedPencil g = generate({{0.1, 1}, {0.2, 1}, {-0.3, 1}}, {}, 2, 0, EmbeddingKind::DenseGaussian, 11);
  const KroneckerFactors kf = KroneckerFactors::from_truth(g.truth);
  Rng rng(11, Stream::User);
  const ReducedPencil r =
      hankel_reduced_pencil(kf, {0.0, 1.0}, rng.complex_normal_matrix(2, 5), rng.complex_normal_matrix(3, 2));
  EXPECT_EQ(r.t, 3);
  EXPECT_TRUE(r.rank_deficient());
  EXPECT_ERROR_CODE(hankel_reduced_pencil(kf, {0.0, 1.0}, DenseMatrix::Zero(2, 4), DenseMatrix::Zero(3, 2)),
                    ErrorCode::DimensionMismatch);
}
