#include "pencileig/rng.hpp"

namespace pencileig {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, Stream stream, std::uint64_t substream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(stream) << 32 | substream))) {}

Index Rng::uniform_int(Index lo, Index hi) {
  std::uniform_int_distribution<Index> dist(lo, hi);
  return dist(engine_);
}

DenseMatrix Rng::complex_normal_matrix(Index rows, Index cols) {
  DenseMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = complex_normal();
  return out;
}

DenseMatrix Rng::real_normal_matrix(Index rows, Index cols) {
  DenseMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = Complex(normal(), 0.0);
  return out;
}

}  // namespace pencileig
