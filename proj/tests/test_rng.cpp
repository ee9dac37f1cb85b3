#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "nframe/rng.hpp"

using nframe::KeyedRng;

TEST_CASE("identical keys replay the identical sequence") {
  KeyedRng a(42, 7);
  KeyedRng b(42, 7);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_gaussian() == b.next_gaussian());
  CHECK(a.next_complex_gaussian() == b.next_complex_gaussian());
}

TEST_CASE("streams and seeds are decorrelated") {
  KeyedRng a(42, 0);
  KeyedRng b(42, 1);
  KeyedRng c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    same_ab += va == b.next_u64();
    same_ac += va == c.next_u64();
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("unit draws stay in range and look uniform") {
  KeyedRng rng(9, 3);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.02);
}

TEST_CASE("gaussian draws have the right first two moments") {
  KeyedRng rng(10, 4);
  double sum = 0.0, sumsq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sumsq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sumsq / n - 1.0) < 0.08);
}

TEST_CASE("gaussian containers are filled entry by entry") {
  KeyedRng a(11, 5);
  KeyedRng b(11, 5);
  const nframe::Matrix m = a.next_gaussian_matrix(3, 2, true);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(m(i, j) == b.next_complex_gaussian());
  const nframe::Vector v = a.next_gaussian_vector(4, false);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(v[i].imag() == 0.0);
    CHECK(v[i].real() == b.next_gaussian());
  }
}
