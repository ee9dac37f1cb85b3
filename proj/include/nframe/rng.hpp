#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "nframe/dense.hpp"

namespace nframe {

// Deterministic counter-based generator.  Each output is the SplitMix64
// finaliser applied to a key derived from (seed, stream, counter), so a
// given (seed, stream) pair always yields the same sequence regardless of
// platform or of what other streams were drawn in between.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::uint64_t stream) : base_(mix(mix(seed) ^ (stream * 0xd2b74407b1ce6e93ULL + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next_u64() { return mix(base_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // Uniform in [0, 1), 53 usable bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Standard normal via Box-Muller; std::normal_distribution is avoided
  // because its output differs between standard library implementations.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

  Complex next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re, im};
  }

  Vector next_gaussian_vector(std::size_t dim, bool complex_entries = true) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i)
      v[i] = complex_entries ? next_complex_gaussian() : Complex(next_gaussian(), 0.0);
    return v;
  }

  Matrix next_gaussian_matrix(std::size_t rows, std::size_t cols, bool complex_entries = true) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = complex_entries ? next_complex_gaussian() : Complex(next_gaussian(), 0.0);
    return m;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace nframe
