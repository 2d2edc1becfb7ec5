#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pencileig/baselines.hpp"
#include "pencileig/contour.hpp"

namespace pencileig {

inline constexpr int kResultSchemaVersion = 1;

/// JSON document:
///   { "schema_version": 1, "tau": int, "warnings": [..],
///     "pairs": [ { "lambda_re", "lambda_im", "rrn", "in_region", "finite",
///                  "spurious", "vector_path"? } ],
///     "timings": { "steps": [5 doubles], "total": double }? }
/// Infinite eigenvalues are written with lambda_re = lambda_im = null.
/// `vector_paths` (when nonempty) runs parallel to result.pairs; empty
/// entries are omitted.
void write_results_json(std::ostream& out, const SolveResult& result, const std::vector<std::string>& vector_paths,
                        bool with_timings);

/// CSV with header lambda_re,lambda_im,rrn,in_region,finite,spurious,vector_path.
void write_results_csv(std::ostream& out, const SolveResult& result, const std::vector<std::string>& vector_paths);

/// CSV with header N,max_rerr,max_rrn,seconds (max_rerr empty when unknown).
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct ComparisonRow {
  std::string method;
  Index found = 0;
  std::optional<Index> expected;
  double max_rrn = 0.0;
  std::optional<double> max_rerr;
  double seconds = 0.0;
};

/// CSV with header method,found,expected,max_rerr,max_rrn,seconds.
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);

/// Human-readable per-step wall-time table with each step's share.
void write_timing_table(std::ostream& out, const StepTimings& timings);

/// Shortest round-trip decimal form ("%.17g").
std::string format_double(double v);

}  // namespace pencileig
