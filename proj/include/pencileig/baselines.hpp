#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pencileig/contour.hpp"
#include "pencileig/oracle.hpp"

namespace pencileig {

/// Square-ization of a nonsquare pencil followed by a dense eigensolve.
///   F1: z B V - A V with V n x m random (m < n)
///   F2: z [B; O] - [A; O] (m < n)
///   F3: z V B - V A with V n x m random (m > n)
///   F4: z [B, O] - [A, O] (m > n)
enum class BaselineKind { F1RightProject, F2ZeroPadRows, F3LeftProject, F4ZeroPadCols };

/// "f1", "f2", "f3", "f4".
const char* to_string(BaselineKind kind);

struct BaselineResult {
  std::string name;
  /// Finite eigenpairs of the squared pencil, vectors mapped back to C^n and
  /// residuals measured on the original pencil.
  std::vector<EigenPair> pairs;
  double seconds = 0.0;

  Index in_region_count() const;
  std::vector<Complex> in_region_eigenvalues() const;
  double max_in_region_rrn() const;
};

/// Dense path only; max(m, n) <= 2000. Throws DimensionMismatch when the
/// shape does not suit the kind.
BaselineResult run_baseline(const MatrixPencil& p, BaselineKind kind, const Region& region, std::uint64_t seed);

/// The contour solver applied to the squared pencil of F1 or F3 ("f1p",
/// "f3p"), with pseudoinverse resolvents as for the original pencil.
BaselineResult run_baseline_contour(const MatrixPencil& p, BaselineKind kind, const ContourConfig& cfg);

/// Parses one of f1, f2, f3, f4, f1p, f3p. `contour` is set for the primed forms.
BaselineKind parse_baseline(const std::string& name, bool& contour);

}  // namespace pencileig
