#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pencileig/baselines.hpp"
#include "pencileig/contour.hpp"
#include "pencileig/kronecker.hpp"

namespace pencileig {

/// "a+bi" with optional signs, exponents and either part omitted:
/// "1+1i", "-2.5", "3i", "-i", "1e-3-2E+1i". Also accepts j for i.
Complex parse_complex(const std::string& text);

/// "a:b:step" -> a, a+step, ..., up to b inclusive.
std::vector<Index> parse_sweep(const std::string& text);

using KeyValues = std::map<std::string, std::string>;

/// Flat key = value lines; '#' starts a comment, blank lines are skipped.
/// Duplicate or malformed lines raise ParseError.
KeyValues read_key_values(std::istream& in);
KeyValues read_key_values_file(const std::string& path);

/// Generator recipe from a key-value spec. Keys:
///   eta, rho, q, r, nu             block sizes (eta/rho sampled as usual)
///   eigenvalues = 0.5+0.1i, 2:3    explicit finite eigenvalues, ":k" gives a Jordan block
///   nilpotent = 2, 1, 3            explicit infinite-block sizes
///   embed = identity|gaussian|givens, density, seed, m, n (shape checks)
KroneckerSpec parse_kronecker_spec(const KeyValues& kv);

enum class OutputFormat { Json, Csv };

struct BaselineRequest {
  BaselineKind kind;
  bool contour = false;
};

struct RunConfig {
  std::optional<KroneckerSpec> generate;
  std::optional<std::pair<std::string, std::string>> files;
  ContourConfig contour;
  std::vector<BaselineRequest> baselines;
  OutputFormat format = OutputFormat::Json;
  std::string out_path;
  std::optional<std::vector<Index>> sweep;
  bool timing = false;
  bool vectors = false;

  /// Exactly one input source; a sweep needs a generated pencil.
  void validate() const;
};

}  // namespace pencileig
