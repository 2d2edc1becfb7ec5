#include <benchmark/benchmark.h>

#include <map>

#include <omp.h>

#include "pencileig/contour.hpp"
#include "pencileig/kronecker.hpp"
#include "pencileig/rng.hpp"

using namespace pencileig;

namespace {

struct Problem {
  GeneratedPencil g;
  ContourConfig cfg;
  DenseMatrix probes;
};

// (m, n) = (3 eta, 10 eta) with q = 7 eta, the shape family of the desk-scale runs
const Problem& problem(Index eta, LsqMethod method) {
  static std::map<std::pair<Index, int>, Problem> cache;
  const auto key = std::make_pair(eta, static_cast<int>(method));
  auto it = cache.find(key);
  if (it == cache.end()) {
    Problem p{make_kronecker_pencil(
                  KroneckerSpec::sampled(eta, eta, 8 * eta, eta, 0, {EmbeddingKind::GivensSparse, 0.01}, 1)),
              {}, {}};
    p.cfg.radius = 0.3;
    p.cfg.num_quad = 16;
    p.cfg.lsq.method = method;
    Rng rng(1, Stream::Probe);
    p.probes = rng.complex_normal_matrix(p.g.pencil.rows(), p.cfg.probes);
    it = cache.emplace(key, std::move(p)).first;
  }
  return it->second;
}

void BM_MomentsSerial(benchmark::State& state) {
  const Problem& p = problem(state.range(0), static_cast<LsqMethod>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_moments_serial(p.g.pencil, p.cfg, p.probes).s_tilde.data());
}

void BM_MomentsParallel(benchmark::State& state) {
  const Problem& p = problem(state.range(0), static_cast<LsqMethod>(state.range(1)));
  ContourConfig cfg = p.cfg;
  cfg.threads = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_moments(p.g.pencil, cfg, p.probes).s_tilde.data());
  state.counters["threads"] = static_cast<double>(cfg.threads);
}

void serial_args(benchmark::internal::Benchmark* b) {
  for (Index eta : {10, 50})
    for (LsqMethod m : {LsqMethod::DensePinv, LsqMethod::GlobalCgls}) b->Args({eta, static_cast<int>(m)});
}

void parallel_args(benchmark::internal::Benchmark* b) {
  const int max_threads = omp_get_num_procs();
  for (Index eta : {10, 50})
    for (LsqMethod m : {LsqMethod::DensePinv, LsqMethod::GlobalCgls})
      for (int t = 1; t <= max_threads; t *= 2) b->Args({eta, static_cast<int>(m), t});
}

}  // namespace

BENCHMARK(BM_MomentsSerial)->Apply(serial_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MomentsParallel)->Apply(parallel_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
