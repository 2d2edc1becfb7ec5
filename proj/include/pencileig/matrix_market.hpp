#pragma once

#include <filesystem>
#include <iosfwd>

#include "pencileig/pencil.hpp"

namespace pencileig {

/// Reads coordinate (-> sparse) or array (-> dense) Matrix Market data.
/// Real, integer and pattern fields are promoted to complex; symmetric,
/// hermitian and skew-symmetric storage is expanded.
ComplexMatrix read_matrix_market(std::istream& in);
ComplexMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes "coordinate complex general" with 17 significant digits, which
/// round-trips every double exactly.
void write_matrix_market(std::ostream& out, const ComplexMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const ComplexMatrix& m);

}  // namespace pencileig
