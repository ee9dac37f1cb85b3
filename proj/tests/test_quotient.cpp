#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nframe/dense.hpp"
#include "nframe/errors.hpp"
#include "nframe/quotient.hpp"
#include "nframe/rng.hpp"
#include "oracle.hpp"

using namespace nframe;
using namespace th;
using th::e;
using th::near;
using th::near_c;
using th::near_mat;
using th::near_vec;
using th::rv;
using th::std_space;

namespace {

AmbientSpace random_space(KeyedRng& rng, std::size_t d) {
  const Matrix a = rng.next_gaussian_matrix(d, d, true);
  Matrix gram = a * a.adjoint() + Complex(0.5 * static_cast<double>(d)) * Matrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const Complex s = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
      gram(i, j) = s;
      gram(j, i) = std::conj(s);
    }
  return AmbientSpace(d, gram);
}

std::vector<Vector> independent_vectors(KeyedRng& rng, std::size_t d, std::size_t count) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < count; ++i) vs.push_back(rng.next_gaussian_vector(d, true));
    if (numeric_rank(Matrix::from_columns(vs)) == count) return vs;
  }
  return {};
}

}  // namespace

TEST_CASE("quotient by a coordinate direction keeps the aligned basis") {
  const AmbientSpace space = std_space(3);
  const ConditioningTuple cond(space, {e(3, 2)});
  const QuotientSpace qs(space, cond);

  CHECK(qs.dim() == 2);
  CHECK(qs.ambient_dim() == 3);
  CHECK(near_mat(qs.induced_gram(), Matrix::identity(2), 1e-12));
  const Matrix expected = Matrix::from_columns({e(3, 0), e(3, 1)});
  CHECK(near_mat(qs.mf_basis(), expected, 1e-12));

  CHECK(near_vec(qs.project(e(3, 0)), rv({1, 0}), 1e-12));
  CHECK(near_vec(qs.project(e(3, 2)), rv({0, 0}), 1e-12));
  CHECK(near_vec(qs.project(rv({2, 3, 7})), rv({2, 3}), 1e-12));
  CHECK(near_vec(qs.lift(rv({2, 3})), rv({2, 3, 0}), 1e-12));
}

TEST_CASE("rank three conditioning leaves a line") {
  const AmbientSpace space = std_space(3);
  const ConditioningTuple cond(space, {e(3, 1), e(3, 2)});
  const QuotientSpace qs(space, cond);
  CHECK(qs.dim() == 1);
  CHECK(near_vec(qs.mf_basis().column(0), e(3, 0), 1e-12));
}

TEST_CASE("quotient by a tilted direction") {
  const AmbientSpace space = std_space(3);
  const double s = 1.0 / std::sqrt(2.0);
  const Vector tilted{Complex(0.0), Complex(s), Complex(s)};
  const ConditioningTuple cond(space, {tilted});
  const QuotientSpace qs(space, cond);

  CHECK(qs.dim() == 2);
  CHECK(near_mat(qs.induced_gram(), Matrix::identity(2), 1e-10));

  // Basis columns are e1 and (0, 1, -1)/sqrt(2) as a set; the eigensolver
  // decides the order, the phase convention pins the signs.
  const Vector anti{Complex(0.0), Complex(s), Complex(-s)};
  bool matched_direct = near_vec(qs.mf_basis().column(0), e(3, 0), 1e-9) &&
                        near_vec(qs.mf_basis().column(1), anti, 1e-9);
  bool matched_swapped = near_vec(qs.mf_basis().column(1), e(3, 0), 1e-9) &&
                         near_vec(qs.mf_basis().column(0), anti, 1e-9);
  CHECK((matched_direct || matched_swapped));

  const Vector killed = qs.project(tilted);
  CHECK(killed.norm2() <= 1e-10);
}

TEST_CASE("induced inner products on the standard example") {
  const QuotientSpace qs = th::r3_quot_e3();
  CHECK(near_c(qs.induced_inner(e(3, 0), e(3, 0)), Complex(1.0), 1e-12));
  CHECK(near_c(qs.induced_inner(e(3, 0), e(3, 2)), Complex(0.0), 1e-12));

  const Vector u = rv({1, 1, 0});
  const Vector v = rv({1, 0, 0});
  const Complex raw = oracle::raw_n_inner(oracle::to_raw(qs.ambient().gram), oracle::to_raw(u),
                                          oracle::to_raw(v), oracle::to_raw(qs.fixing().vectors()));
  CHECK(near_c(raw, Complex(1.0), 1e-12));
  CHECK(near_c(qs.induced_inner(u, v), raw, 1e-9));
}

TEST_CASE("projection is a coset map and lifting is a section") {
  KeyedRng rng(7201, 0);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t d = 3 + static_cast<std::size_t>(trial % 3);
    const std::size_t held = 1 + static_cast<std::size_t>(trial % 2);
    const AmbientSpace space = random_space(rng, d);
    const auto fixing = independent_vectors(rng, d, held);
    REQUIRE(!fixing.empty());
    const ConditioningTuple cond(space, fixing);
    const QuotientSpace qs(space, cond);
    CHECK(qs.dim() == d - held);

    const Vector p = rng.next_gaussian_vector(d, true);

    // Shifting by the held span never moves the projection.
    Vector shifted = p;
    for (const Vector& f : fixing) {
      Vector bump = f;
      bump *= rng.next_complex_gaussian();
      shifted += bump;
    }
    CHECK(th::max_abs_diff(qs.project(p), qs.project(shifted)) <= 1e-8 * (1.0 + p.norm2()));

    // Projection then lift is idempotent on representatives.
    const Vector rep = qs.lift(qs.project(p));
    CHECK(th::max_abs_diff(qs.project(rep), qs.project(p)) <= 1e-9 * (1.0 + p.norm2()));

    // The coset norm computed in coordinates equals the conditioned norm.
    const double direct =
        oracle::raw_n_norm(oracle::to_raw(space.gram), oracle::to_raw(p), oracle::to_raw(fixing));
    CHECK(near(qs.induced_norm(p), direct, 1e-8 * (1.0 + direct)));

    // And the difference p - lift(project(p)) lies inside the held span:
    // appending it as an extra column must not raise the exhaustive-minor
    // rank of the tuple.
    Vector defect = p;
    defect -= rep;
    oracle::Mat widened(d, oracle::Vec(held + 1, Complex(0.0)));
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < held; ++c) widened[r][c] = fixing[c][r];
      widened[r][held] = defect[r];
    }
    CHECK(oracle::minor_rank(widened, 1e-6) == held);
  }
}

TEST_CASE("induced pairing matches the conditioned pairing on random data") {
  KeyedRng rng(7202, 0);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t d = 4;
    const AmbientSpace space = random_space(rng, d);
    const auto fixing = independent_vectors(rng, d, 2);
    const ConditioningTuple cond(space, fixing);
    const QuotientSpace qs(space, cond);
    const Vector p = rng.next_gaussian_vector(d, true);
    const Vector q = rng.next_gaussian_vector(d, true);
    const Complex raw = oracle::raw_n_inner(oracle::to_raw(space.gram), oracle::to_raw(p),
                                            oracle::to_raw(q), oracle::to_raw(fixing));
    CHECK(std::abs(qs.induced_inner(p, q) - raw) <= 1e-8 * (1.0 + std::abs(raw)));
  }
}

TEST_CASE("order one quotient is the whole space") {
  const AmbientSpace space = std_space(2);
  const ConditioningTuple cond(space, {});
  const QuotientSpace qs(space, cond);
  CHECK(qs.dim() == 2);
  CHECK(near_vec(qs.project(rv({3, 4})), rv({3, 4}), 1e-12));
}

TEST_CASE("degenerate conditioning data cannot reach the quotient") {
  const AmbientSpace space = std_space(3);
  CHECK_THROWS_AS(ConditioningTuple(space, {e(3, 0), rv({2, 0, 0})}), InvalidInputError);
  const ConditioningTuple ok(space, {e(3, 2)});
  CHECK_THROWS_AS(QuotientSpace(std_space(4), ok), DimensionError);
}
