#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "pencileig/contour.hpp"

namespace pencileig {

namespace {

// Pairs every reference eigenvalue with a distinct finite Ritz pair, closest
// first, whether or not the solver accepted it; the errors then follow the
// quadrature convergence instead of the acceptance test.
void matched_errors(const SolveResult& res, const std::vector<Complex>& reference, SweepRow& row) {
  struct Candidate {
    double distance;
    std::size_t ref, pair;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < reference.size(); ++i)
    for (std::size_t j = 0; j < res.pairs.size(); ++j)
      if (res.pairs[j].finite) candidates.push_back({std::abs(reference[i] - res.pairs[j].lambda), i, j});
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.distance < b.distance; });
  std::vector<bool> ref_used(reference.size(), false);
  std::vector<bool> pair_used(res.pairs.size(), false);
  std::size_t matched = 0;
  double rerr = 0.0;
  double worst_rrn = 0.0;
  for (const Candidate& c : candidates) {
    if (ref_used[c.ref] || pair_used[c.pair]) continue;
    ref_used[c.ref] = pair_used[c.pair] = true;
    ++matched;
    rerr = std::max(rerr, relative_error(res.pairs[c.pair].lambda, reference[c.ref]).value);
    worst_rrn = std::max(worst_rrn, res.pairs[c.pair].rrn);
  }
  row.max_rerr = matched == reference.size() ? rerr : std::numeric_limits<double>::infinity();
  row.max_rrn = worst_rrn;
}

}  // namespace

std::vector<SweepRow> convergence_sweep(const MatrixPencil& p, const ContourConfig& cfg,
                                        const std::vector<Index>& num_quad_values,
                                        const std::optional<std::vector<Complex>>& reference) {
  std::vector<SweepRow> rows;
  rows.reserve(num_quad_values.size());
  for (Index n : num_quad_values) {
    ContourConfig local = cfg;
    local.num_quad = n;
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult res = solve(p, local);
    SweepRow row;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    row.num_quad = n;
    row.found = res.in_region_count();
    if (reference) {
      matched_errors(res, *reference, row);
    } else {
      row.max_rrn = res.max_in_region_rrn();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pencileig
