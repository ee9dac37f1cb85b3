#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nframe/dense.hpp"
#include "nframe/errors.hpp"
#include "nframe/frames.hpp"
#include "nframe/rng.hpp"
#include "oracle.hpp"

using namespace nframe;
using namespace th;
using th::e;
using th::near;
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

Frame random_frame(KeyedRng& rng, std::size_t d, std::size_t held, std::size_t size) {
  const AmbientSpace space = random_space(rng, d);
  const auto fixing = independent_vectors(rng, d, held);
  const ConditioningTuple cond(space, fixing);
  QuotientSpace qs(space, cond);
  std::vector<Vector> family;
  for (std::size_t i = 0; i < size; ++i) family.push_back(rng.next_gaussian_vector(d, true));
  return Frame(std::move(qs), std::move(family));
}

}  // namespace

TEST_CASE("analysis coefficients on the worked example") {
  const Frame f = th::frame_e1e1e2();
  CHECK(near_vec(analysis(f, e(3, 0)), rv({1, 1, 0}), 1e-12));
  CHECK(near_vec(analysis(f, e(3, 2)), rv({0, 0, 0}), 1e-12));
  CHECK(near_vec(analysis(f, rv({2, 3, 0})), rv({2, 2, 3}), 1e-12));

  // Entry i is the conditioned pairing against family member i.
  const Vector p = rv({2, 3, 0});
  const Vector coeffs = analysis(f, p);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Complex raw = oracle::raw_n_inner(
        oracle::to_raw(f.space().ambient().gram), oracle::to_raw(p),
        oracle::to_raw(f.vectors()[i]), oracle::to_raw(f.space().fixing().vectors()));
    CHECK(std::abs(coeffs[i] - raw) <= 1e-9);
  }
}

TEST_CASE("synthesis on the worked example") {
  const Frame f = th::frame_e1e1e2();
  CHECK(near_vec(synthesis(f, rv({1, 0, 0})), rv({1, 0, 0}), 1e-12));
  CHECK(near_vec(synthesis(f, rv({0, 0, 0})), rv({0, 0, 0}), 1e-12));
  CHECK(near_vec(synthesis(f, rv({1, 1, 2})), rv({2, 2, 0}), 1e-12));
}

TEST_CASE("frame operators of the small families") {
  CHECK(near_mat(frame_operator(th::frame_onb_r3()), Matrix::identity(2), 1e-12));
  CHECK(near_mat(frame_operator(th::frame_e1e1e2()), Matrix::diagonal({2.0, 1.0}), 1e-12));

  const AmbientSpace plane = std_space(2);
  const ConditioningTuple none(plane, {});
  const Frame single(QuotientSpace(plane, none), {e(2, 0)});
  CHECK(near_mat(frame_operator(single), Matrix::diagonal({1.0, 0.0}), 1e-12));
}

TEST_CASE("frame bounds of the small families") {
  const FrameBounds onb = frame_bounds(th::frame_onb_r3());
  CHECK(near(onb.lower, 1.0, 1e-10));
  CHECK(near(onb.upper, 1.0, 1e-10));
  CHECK(onb.is_frame);
  CHECK(onb.is_tight);

  const FrameBounds doubled = frame_bounds(th::frame_e1e1e2());
  CHECK(near(doubled.lower, 1.0, 1e-10));
  CHECK(near(doubled.upper, 2.0, 1e-10));
  CHECK(doubled.is_frame);
  CHECK_FALSE(doubled.is_tight);
  const oracle::RawBounds raw = oracle::raw_frame_bounds(
      oracle::to_raw(Matrix::identity(3)), oracle::to_raw(std::vector<Vector>{e(3, 2)}),
      oracle::to_raw(std::vector<Vector>{e(3, 0), e(3, 0), e(3, 1)}));
  CHECK(near(raw.lower, 1.0, 1e-10));
  CHECK(near(raw.upper, 2.0, 1e-10));
  CHECK(raw.transversal_dim == 2);

  const AmbientSpace plane = std_space(2);
  const Frame single(QuotientSpace(plane, ConditioningTuple(plane, {})), {e(2, 0)});
  const FrameBounds short_bounds = frame_bounds(single);
  CHECK(near(short_bounds.lower, 0.0, 1e-10));
  CHECK_FALSE(short_bounds.is_frame);
  const oracle::RawBounds raw_single =
      oracle::raw_frame_bounds(oracle::to_raw(Matrix::identity(2)), {},
                               oracle::to_raw(std::vector<Vector>{e(2, 0)}));
  CHECK(near(raw_single.lower, 0.0, 1e-10));
  CHECK(near(raw_single.upper, 1.0, 1e-10));
}

TEST_CASE("optimal bounds agree with pencil extremisation on random frames") {
  KeyedRng rng(7301, 0);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t d = 3 + static_cast<std::size_t>(trial % 3);
    const std::size_t held = 1 + static_cast<std::size_t>(trial % 2);
    const std::size_t size = d - held + 1 + static_cast<std::size_t>(trial % 2);
    const Frame f = random_frame(rng, d, held, size);
    const FrameBounds mine = frame_bounds(f);
    const oracle::RawBounds raw = oracle::raw_frame_bounds(
        oracle::to_raw(f.space().ambient().gram), oracle::to_raw(f.space().fixing().vectors()),
        oracle::to_raw(f.vectors()));
    const double scale = 1.0 + raw.upper;
    CHECK(near(mine.lower, raw.lower, 1e-8 * scale));
    CHECK(near(mine.upper, raw.upper, 1e-8 * scale));
  }
}

TEST_CASE("frame inequality holds at the computed bounds") {
  KeyedRng rng(7302, 0);
  const Frame f = random_frame(rng, 4, 1, 5);
  const FrameBounds b = frame_bounds(f);
  REQUIRE(b.is_frame);
  for (int probe = 0; probe < 10; ++probe) {
    const Vector p = rng.next_gaussian_vector(4, true);
    const Vector coeffs = analysis(f, p);
    double energy = 0.0;
    for (std::size_t i = 0; i < coeffs.dim(); ++i) energy += std::norm(coeffs[i]);
    const double nn = f.space().induced_norm(p);
    const double slack = 1e-7 * (1.0 + energy);
    CHECK(energy >= b.lower * nn * nn - slack);
    CHECK(energy <= b.upper * nn * nn + slack);
  }
}

TEST_CASE("canonical duals of the small families") {
  const Frame onb = th::frame_onb_r3();
  const Frame onb_dual = canonical_dual(onb);
  CHECK(near_vec(onb_dual.vectors()[0], rv({1, 0, 0}), 1e-10));
  CHECK(near_vec(onb_dual.vectors()[1], rv({0, 1, 0}), 1e-10));

  const Frame f = th::frame_e1e1e2();
  const Frame fd = canonical_dual(f);
  CHECK(near_vec(fd.vectors()[0], rv({0.5, 0, 0}), 1e-10));
  CHECK(near_vec(fd.vectors()[1], rv({0.5, 0, 0}), 1e-10));
  CHECK(near_vec(fd.vectors()[2], rv({0, 1, 0}), 1e-10));

  const Frame stretched(th::r3_quot_e3(), {rv({2, 0, 0}), rv({0, 1, 0})});
  const Frame sd = canonical_dual(stretched);
  CHECK(near_vec(sd.vectors()[0], rv({0.5, 0, 0}), 1e-10));
  CHECK(near_vec(sd.vectors()[1], rv({0, 1, 0}), 1e-10));

  // Independent route: the dual must reconstruct arbitrary cosets.
  const std::vector<Vector> probes = {rv({1, 0, 0}), rv({0, 1, 0}), rv({3, -2, 5})};
  const double defect = oracle::raw_reconstruction_defect(
      oracle::to_raw(Matrix::identity(3)), oracle::to_raw(f.space().fixing().vectors()),
      oracle::to_raw(f.vectors()), oracle::to_raw(fd.vectors()), oracle::to_raw(probes));
  CHECK(defect <= 1e-9);
}

TEST_CASE("canonical dual requires an actual frame") {
  const AmbientSpace plane = std_space(2);
  const Frame single(QuotientSpace(plane, ConditioningTuple(plane, {})), {e(2, 0)});
  CHECK_THROWS_AS(canonical_dual(single), InvalidInputError);
}

TEST_CASE("dual pair checks on the small families") {
  const Frame onb = th::frame_onb_r3();
  const DualCheck self = is_dual_pair(onb, onb);
  CHECK(self.dual);
  CHECK(self.residual_fg <= 1e-10);

  const Frame f = th::frame_e1e1e2();
  const DualCheck canon = is_dual_pair(f, canonical_dual(f));
  CHECK(canon.dual);
  CHECK(canon.residual_fg <= 1e-10);
  CHECK(canon.residual_gf <= 1e-10);

  const DualCheck wrong = is_dual_pair(f, f);
  CHECK_FALSE(wrong.dual);
  CHECK(near(wrong.residual_fg, 1.0, 1e-10));
  CHECK(near(wrong.residual_gf, 1.0, 1e-10));
}

TEST_CASE("canonical duals reconstruct random frames") {
  KeyedRng rng(7303, 0);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t d = 3 + static_cast<std::size_t>(trial % 2);
    const Frame f = random_frame(rng, d, 1, d + 1);
    if (!frame_bounds(f).is_frame) continue;
    const Frame fd = canonical_dual(f);
    const DualCheck dc = is_dual_pair(f, fd);
    CHECK(dc.dual);

    std::vector<Vector> probes;
    for (int i = 0; i < 3; ++i) probes.push_back(rng.next_gaussian_vector(d, true));
    const double defect = oracle::raw_reconstruction_defect(
        oracle::to_raw(f.space().ambient().gram), oracle::to_raw(f.space().fixing().vectors()),
        oracle::to_raw(f.vectors()), oracle::to_raw(fd.vectors()), oracle::to_raw(probes));
    CHECK(defect <= 1e-7 * (1.0 + frame_bounds(f).upper));
  }
}

TEST_CASE("double dual returns the coset representatives") {
  KeyedRng rng(7304, 0);
  const Frame f = random_frame(rng, 4, 1, 6);
  REQUIRE(frame_bounds(f).is_frame);
  const Frame dd = canonical_dual(canonical_dual(f));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vector rep = f.space().lift(f.space().project(f.vectors()[i]));
    CHECK(th::max_abs_diff(dd.vectors()[i], rep) <= 1e-9 * (1.0 + rep.norm2()));
  }
}

TEST_CASE("frame construction validates its family") {
  const QuotientSpace qs = th::r3_quot_e3();
  CHECK_THROWS_AS(Frame(qs, {}), InvalidInputError);
  CHECK_THROWS_AS(Frame(qs, {Vector::unit(2, 0)}), DimensionError);
  CHECK_THROWS_AS(is_dual_pair(th::frame_e1e1e2(), th::frame_onb_r3()), DimensionError);
}

TEST_CASE("bound classification thresholds") {
  const FrameBounds tight = classify_bounds(2.0, 2.0 + 1e-12);
  CHECK(tight.is_frame);
  CHECK(tight.is_tight);
  const FrameBounds loose = classify_bounds(1.0, 2.0);
  CHECK(loose.is_frame);
  CHECK_FALSE(loose.is_tight);
  const FrameBounds dead = classify_bounds(1e-12, 1.0);
  CHECK_FALSE(dead.is_frame);
}
