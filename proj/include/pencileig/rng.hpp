#pragma once

#include <cstdint>
#include <random>

#include "pencileig/types.hpp"

namespace pencileig {

/// Independent purposes that draw random numbers. Each gets its own stream so
/// that changing how one quantity is sampled never shifts another.
enum class Stream : std::uint64_t {
  Eigenvalues = 1,
  Nilpotent = 2,
  LeftEmbedding = 3,
  RightEmbedding = 4,
  Probe = 5,
  TestMatrix = 6,
  Baseline = 7,
  Padding = 8,
  User = 9,
};

/// Seedable 64-bit generator split into per-purpose streams.
class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream, std::uint64_t substream = 0);

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  Index uniform_int(Index lo, Index hi);

  /// Real and imaginary parts i.i.d. standard normal.
  Complex complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  DenseMatrix complex_normal_matrix(Index rows, Index cols);
  DenseMatrix real_normal_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pencileig
