#include "pencileig/kronecker.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace pencileig {

Index KroneckerSpec::eta() const {
  Index total = 0;
  for (const auto& e : finite_eigs) total += e.jordan_size;
  return total;
}

Index KroneckerSpec::rho() const {
  Index total = 0;
  for (Index s : nilpotent_sizes) total += s;
  return total;
}

Index KroneckerSpec::rows() const { return eta() + rho() + (nu > 0 ? nu + 1 : 0) + r; }
Index KroneckerSpec::cols() const { return eta() + rho() + nu + q; }

std::vector<Index> random_composition(Index total, Index parts, Rng& rng) {
  if (total <= 0) return {};
  parts = std::clamp<Index>(parts, 1, total);
  // choose parts-1 distinct cut points among the total-1 gaps
  std::vector<Index> gaps(static_cast<std::size_t>(total - 1));
  for (Index i = 0; i < total - 1; ++i) gaps[static_cast<std::size_t>(i)] = i + 1;
  for (Index i = 0; i < parts - 1; ++i) {
    const Index j = rng.uniform_int(i, total - 2);
    std::swap(gaps[static_cast<std::size_t>(i)], gaps[static_cast<std::size_t>(j)]);
  }
  std::vector<Index> cuts(gaps.begin(), gaps.begin() + (parts - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Index> sizes;
  Index prev = 0;
  for (Index c : cuts) {
    sizes.push_back(c - prev);
    prev = c;
  }
  sizes.push_back(total - prev);
  return sizes;
}

KroneckerSpec KroneckerSpec::sampled(Index eta, Index rho, Index q, Index r, Index nu, Embedding embed,
                                     std::uint64_t seed) {
  KroneckerSpec spec;
  Rng eig_rng(seed, Stream::Eigenvalues);
  for (Index i = 0; i < eta; ++i) spec.finite_eigs.push_back({eig_rng.complex_normal(), 1});
  Rng nil_rng(seed, Stream::Nilpotent);
  spec.nilpotent_sizes = random_composition(rho, (rho + 1) / 2, nil_rng);
  spec.q = q;
  spec.r = r;
  spec.nu = nu;
  spec.embed = embed;
  spec.seed = seed;
  return spec;
}

std::vector<Complex> GroundTruth::eigs_in_disk(Complex center, double radius) const {
  std::vector<Complex> out;
  for (Complex l : finite_eigs)
    if (std::abs(l - center) <= radius) out.push_back(l);
  return out;
}

namespace {

using Triplet = Eigen::Triplet<Complex, Index>;

void validate(const KroneckerSpec& spec) {
  if (spec.q < 0 || spec.r < 0 || spec.nu < 0)
    throw Error(ErrorCode::DimensionMismatch, "block counts must be nonnegative");
  for (const auto& e : spec.finite_eigs) {
    if (e.jordan_size <= 0) throw Error(ErrorCode::DimensionMismatch, "Jordan block size must be positive");
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
      throw Error(ErrorCode::NonFinite, "finite eigenvalue is not finite");
  }
  for (Index s : spec.nilpotent_sizes)
    if (s <= 0) throw Error(ErrorCode::DimensionMismatch, "nilpotent block size must be positive");
  if (spec.rows() <= 0 || spec.cols() <= 0) throw Error(ErrorCode::DimensionMismatch, "spec yields an empty pencil");
  if (spec.expected_rows && *spec.expected_rows != spec.rows())
    throw Error(ErrorCode::DimensionMismatch, "blocks give m = " + std::to_string(spec.rows()) +
                                                  " but m = " + std::to_string(*spec.expected_rows) + " requested");
  if (spec.expected_cols && *spec.expected_cols != spec.cols())
    throw Error(ErrorCode::DimensionMismatch, "blocks give n = " + std::to_string(spec.cols()) +
                                                  " but n = " + std::to_string(*spec.expected_cols) + " requested");
  if (spec.embed.kind == EmbeddingKind::GivensSparse && !(spec.embed.density > 0.0 && spec.embed.density <= 1.0))
    throw Error(ErrorCode::InfeasibleDensity, "density must lie in (0, 1]");
}

struct Canonical {
  std::vector<Triplet> a;
  std::vector<Triplet> b;
  std::vector<KroneckerBlock> blocks;
  Index active_rows = 0;
  Index active_cols = 0;
};

Canonical build_canonical(const KroneckerSpec& spec) {
  Canonical c;
  Index row = 0;
  Index col = 0;
  for (const auto& e : spec.finite_eigs) {
    const Index s = e.jordan_size;
    for (Index i = 0; i < s; ++i) {
      c.a.emplace_back(row + i, col + i, e.value);
      c.b.emplace_back(row + i, col + i, Complex(1.0));
      if (i + 1 < s) c.a.emplace_back(row + i, col + i + 1, Complex(1.0));
    }
    c.blocks.push_back({BlockKind::Finite, e.value, row, s, col, s});
    row += s;
    col += s;
  }
  for (Index s : spec.nilpotent_sizes) {
    for (Index i = 0; i < s; ++i) {
      c.a.emplace_back(row + i, col + i, Complex(1.0));
      if (i + 1 < s) c.b.emplace_back(row + i, col + i + 1, Complex(1.0));
    }
    c.blocks.push_back({BlockKind::Infinite, {}, row, s, col, s});
    row += s;
    col += s;
  }
  if (spec.nu > 0) {
    // A part [N_nu^T; e_nu^T], B part [I_nu; 0^T]
    const Index nu = spec.nu;
    for (Index i = 0; i < nu; ++i) {
      c.b.emplace_back(row + i, col + i, Complex(1.0));
      if (i > 0) c.a.emplace_back(row + i, col + i - 1, Complex(1.0));
    }
    c.a.emplace_back(row + nu, col + nu - 1, Complex(1.0));
    c.blocks.push_back({BlockKind::LeftSingular, {}, row, nu + 1, col, nu});
    row += nu + 1;
    col += nu;
  }
  c.active_rows = row;
  c.active_cols = col;
  for (Index i = 0; i < spec.r; ++i) c.blocks.push_back({BlockKind::LeftSingularZero, {}, row + i, 1, col, 0});
  for (Index j = 0; j < spec.q; ++j) c.blocks.push_back({BlockKind::RightSingularZero, {}, row, 0, col + j, 1});
  return c;
}

// Row-oriented (left factor) or column-oriented (right factor) sparse matrix
// under repeated real plane rotations.
class RotatedIdentity {
 public:
  explicit RotatedIdentity(Index size) : lines_(static_cast<std::size_t>(size)) {
    for (Index i = 0; i < size; ++i) lines_[static_cast<std::size_t>(i)][i] = 1.0;
  }

  void rotate(Index i, Index j, double c, double s) {
    auto& li = lines_[static_cast<std::size_t>(i)];
    auto& lj = lines_[static_cast<std::size_t>(j)];
    std::map<Index, double> ni;
    std::map<Index, double> nj;
    for (const auto& [k, v] : li) {
      ni[k] += c * v;
      nj[k] -= s * v;
    }
    for (const auto& [k, v] : lj) {
      ni[k] += s * v;
      nj[k] += c * v;
    }
    li = std::move(ni);
    lj = std::move(nj);
  }

  /// Lines become rows (left factor) or columns (right factor).
  SparseMatrix to_sparse(bool lines_are_rows) const {
    const Index size = static_cast<Index>(lines_.size());
    std::vector<Triplet> t;
    for (Index l = 0; l < size; ++l)
      for (const auto& [k, v] : lines_[static_cast<std::size_t>(l)])
        if (v != 0.0) t.emplace_back(lines_are_rows ? l : k, lines_are_rows ? k : l, Complex(v));
    SparseMatrix s(size, size);
    s.setFromTriplets(t.begin(), t.end());
    return s;
  }

 private:
  std::vector<std::map<Index, double>> lines_;
};

void random_rotation(RotatedIdentity& mat, Index size, Rng& rng) {
  if (size < 2) return;
  const Index i = rng.uniform_int(0, size - 1);
  Index j = rng.uniform_int(0, size - 2);
  if (j >= i) ++j;
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  mat.rotate(i, j, std::cos(theta), std::sin(theta));
}

struct Embedded {
  ComplexMatrix a, b, left, right;
};

Embedded embed_givens(const KroneckerSpec& spec, const SparseMatrix& da, const SparseMatrix& db) {
  const Index m = spec.rows();
  const Index n = spec.cols();
  RotatedIdentity left(m);
  RotatedIdentity right(n);
  Rng rng_l(spec.seed, Stream::LeftEmbedding);
  Rng rng_r(spec.seed, Stream::RightEmbedding);
  const double target = spec.embed.density;
  const double total = static_cast<double>(m) * static_cast<double>(n);
  const Index max_rotations = 64 * (m + n) + 1024;

  SparseMatrix r1 = left.to_sparse(true);
  SparseMatrix r2 = right.to_sparse(false);
  SparseMatrix a = (r1 * da * r2).pruned();
  Index applied = 0;
  while (static_cast<double>(a.nonZeros()) / total < target) {
    if (applied >= max_rotations)
      throw Error(ErrorCode::InfeasibleDensity, "density " + std::to_string(target) + " not reached after " +
                                                    std::to_string(applied) + " rotations");
    const Index batch = std::max<Index>(1, applied / 4);
    for (Index k = 0; k < batch; ++k) {
      // split rotations between the two factors in proportion to their sizes
      if (rng_l.uniform() * static_cast<double>(m + n) < static_cast<double>(m))
        random_rotation(left, m, rng_l);
      else
        random_rotation(right, n, rng_r);
    }
    applied += batch;
    r1 = left.to_sparse(true);
    r2 = right.to_sparse(false);
    a = (r1 * da * r2).pruned();
  }
  SparseMatrix b = (r1 * db * r2).pruned();
  return {ComplexMatrix(std::move(a)), ComplexMatrix(std::move(b)), ComplexMatrix(std::move(r1)),
          ComplexMatrix(std::move(r2))};
}

Embedded embed_dense(const KroneckerSpec& spec, const SparseMatrix& da, const SparseMatrix& db, Index kr,
                     Index kc) {
  const Index m = spec.rows();
  const Index n = spec.cols();
  Rng rng_l(spec.seed, Stream::LeftEmbedding);
  Rng rng_r(spec.seed, Stream::RightEmbedding);
  DenseMatrix r1 = rng_l.real_normal_matrix(m, m);
  DenseMatrix r2 = rng_r.real_normal_matrix(n, n);
  // only the leading kr x kc corner of the canonical pencil is nonzero
  const DenseMatrix core_a = DenseMatrix(da).topLeftCorner(kr, kc);
  const DenseMatrix core_b = DenseMatrix(db).topLeftCorner(kr, kc);
  DenseMatrix a = r1.leftCols(kr) * core_a * r2.topRows(kc);
  DenseMatrix b = r1.leftCols(kr) * core_b * r2.topRows(kc);
  return {ComplexMatrix(std::move(a)), ComplexMatrix(std::move(b)), ComplexMatrix(std::move(r1)),
          ComplexMatrix(std::move(r2))};
}

}  // namespace

GeneratedPencil make_kronecker_pencil(const KroneckerSpec& spec) {
  validate(spec);
  const Index m = spec.rows();
  const Index n = spec.cols();
  Canonical canon = build_canonical(spec);
  SparseMatrix da(m, n);
  SparseMatrix db(m, n);
  da.setFromTriplets(canon.a.begin(), canon.a.end());
  db.setFromTriplets(canon.b.begin(), canon.b.end());

  Embedded emb;
  switch (spec.embed.kind) {
    case EmbeddingKind::Identity: {
      SparseMatrix i_m(m, m);
      SparseMatrix i_n(n, n);
      i_m.setIdentity();
      i_n.setIdentity();
      emb = {ComplexMatrix(DenseMatrix(da)), ComplexMatrix(DenseMatrix(db)), ComplexMatrix(std::move(i_m)),
             ComplexMatrix(std::move(i_n))};
      break;
    }
    case EmbeddingKind::DenseGaussian:
      emb = embed_dense(spec, da, db, canon.active_rows, canon.active_cols);
      break;
    case EmbeddingKind::GivensSparse:
      emb = embed_givens(spec, da, db);
      break;
  }

  GroundTruth truth;
  truth.unitary_embedding = spec.embed.kind != EmbeddingKind::DenseGaussian;
  truth.blocks = canon.blocks;
  for (const auto& e : spec.finite_eigs)
    for (Index i = 0; i < e.jordan_size; ++i) truth.finite_eigs.push_back(e.value);

  // x_i = Q e_{offset_i} = q_inv^{-1} e_{offset_i}
  const Index ell = static_cast<Index>(spec.finite_eigs.size());
  DenseMatrix selector = DenseMatrix::Zero(n, ell);
  Index k = 0;
  for (const auto& blk : canon.blocks) {
    if (blk.kind != BlockKind::Finite) continue;
    selector(blk.col_offset, k) = 1.0;
    truth.eigvec_values.push_back(blk.eigenvalue);
    ++k;
  }
  if (truth.unitary_embedding) {
    // real orthogonal (or identity) right factor
    truth.right_eigvecs = emb.right.to_sparse().adjoint() * selector;
  } else {
    truth.right_eigvecs = emb.right.dense().partialPivLu().solve(selector);
  }
  truth.p_inv = std::move(emb.left);
  truth.q_inv = std::move(emb.right);
  return {MatrixPencil(std::move(emb.a), std::move(emb.b)), std::move(truth)};
}

}  // namespace pencileig
