#pragma once

#include <cstdint>
#include <random>

#include "ncert/matrix.hpp"

namespace ncert {

/// Deterministic random source for tests and fuzzing. The same seed yields
/// the same stream on every platform (raw engine words are reduced by
/// modulus instead of going through distribution objects, whose output is
/// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform-ish integer in [lo, hi] (inclusive); deterministic.
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(eng_() % span);
  }

  std::uint64_t word() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

/// Matrix with entries drawn uniformly from [lo, hi].
inline IMatrix random_matrix(Rng& rng, int rows, int cols, long lo = -5,
                             long hi = 5) {
  IMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m.at(i, j) = rng.uniform(lo, hi);
  }
  return m;
}

/// Determinant-one matrix built from at most `ops` random row shears
/// (row_i += c * row_j, i != j), keeping entry growth small.
inline IMatrix random_unimodular(Rng& rng, int n, int ops = 20) {
  IMatrix m = IMatrix::identity(n);
  if (n < 2) return m;
  for (int t = 0; t < ops; ++t) {
    const int i = static_cast<int>(rng.uniform(0, n - 1));
    int j = static_cast<int>(rng.uniform(0, n - 2));
    if (j >= i) ++j;
    const long c = rng.uniform(-2, 2);
    for (int k = 0; k < n; ++k) m.at(i, k) += Int(c) * m.at(j, k);
  }
  return m;
}

/// Upper-triangular matrix with unit diagonal and entries in [lo, hi] above.
inline IMatrix random_unitriangular(Rng& rng, int n, long lo = -3,
                                    long hi = 3) {
  IMatrix m = IMatrix::identity(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) m.at(i, j) = rng.uniform(lo, hi);
  }
  return m;
}

}  // namespace ncert
