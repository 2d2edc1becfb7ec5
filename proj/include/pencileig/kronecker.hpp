#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pencileig/pencil.hpp"
#include "pencileig/rng.hpp"

namespace pencileig {

struct FiniteEigenvalue {
  Complex value;
  Index jordan_size = 1;
};

enum class EmbeddingKind { Identity, DenseGaussian, GivensSparse };

struct Embedding {
  EmbeddingKind kind = EmbeddingKind::DenseGaussian;
  /// Target nonzero density of A for GivensSparse.
  double density = 0.001;
};

/// Recipe for a test pencil with prescribed Kronecker structure.
///
/// Row blocks, top to bottom: Jordan blocks, nilpotent blocks, the optional
/// left singular block of index `nu` (nu+1 rows), then `r` zero rows (left
/// singular blocks of index 0). Column blocks: Jordan, nilpotent, the `nu`
/// columns of the left singular block, then `q` zero columns (right singular
/// blocks of index 0).
struct KroneckerSpec {
  std::vector<FiniteEigenvalue> finite_eigs;
  std::vector<Index> nilpotent_sizes;
  Index q = 0;
  Index r = 0;
  Index nu = 0;
  Embedding embed;
  std::uint64_t seed = 0;
  /// Optional shape checks; a mismatch is reported as a dimension error.
  std::optional<Index> expected_rows;
  std::optional<Index> expected_cols;

  Index eta() const;
  Index rho() const;
  Index rows() const;
  Index cols() const;

  /// eta simple eigenvalues with standard normal real and imaginary parts and
  /// rho infinite eigenvalues split into ceil(rho/2) nilpotent blocks of random
  /// sizes (so rho/2 superdiagonal ones), drawn from the seed's streams.
  static KroneckerSpec sampled(Index eta, Index rho, Index q, Index r, Index nu, Embedding embed,
                               std::uint64_t seed);
};

/// Random composition of `total` into `parts` positive sizes.
std::vector<Index> random_composition(Index total, Index parts, Rng& rng);

enum class BlockKind { Finite, Infinite, LeftSingular, LeftSingularZero, RightSingularZero };

/// Placement of one Kronecker block inside the canonical (pre-embedding) pencil.
struct KroneckerBlock {
  BlockKind kind;
  Complex eigenvalue{};  // Finite only
  Index row_offset = 0;
  Index rows = 0;
  Index col_offset = 0;
  Index cols = 0;
};

/// Known spectral data of a generated pencil. A = p_inv * D_A * q_inv and
/// B = p_inv * D_B * q_inv, so P = p_inv^{-1} and Q = q_inv^{-1} bring the
/// pencil to Kronecker canonical form.
struct GroundTruth {
  /// Finite eigenvalues with algebraic multiplicity.
  std::vector<Complex> finite_eigs;
  /// One right eigenvector (first column of Q_i) per Jordan block.
  DenseMatrix right_eigvecs;
  /// Eigenvalue belonging to each column of right_eigvecs.
  std::vector<Complex> eigvec_values;
  ComplexMatrix p_inv;
  ComplexMatrix q_inv;
  /// True when p_inv and q_inv are unitary (identity or Givens products).
  bool unitary_embedding = false;
  std::vector<KroneckerBlock> blocks;

  /// Eigenvalues (with multiplicity) in the closed disk |z - center| <= radius.
  std::vector<Complex> eigs_in_disk(Complex center, double radius) const;
};

struct GeneratedPencil {
  MatrixPencil pencil;
  GroundTruth truth;
};

GeneratedPencil make_kronecker_pencil(const KroneckerSpec& spec);

}  // namespace pencileig
