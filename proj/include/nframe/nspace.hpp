#pragma once

#include <string>
#include <vector>

#include "nframe/dense.hpp"

namespace nframe {

// Finite-dimensional complex inner-product space with an explicit metric.
// The pairing of coordinate vectors u, v is <u, v> = v* . gram . u, linear
// in the first argument and conjugate-linear in the second, so gram(i, j)
// holds <e_j, e_i>.
struct AmbientSpace {
  AmbientSpace(std::size_t dim, Matrix gram, std::string label = "");

  std::size_t dim;
  Matrix gram;  // Hermitian positive definite
  std::string label;

  friend bool operator==(const AmbientSpace&, const AmbientSpace&) = default;
};

Complex base_inner(const AmbientSpace& space, const Vector& x, const Vector& y);
double base_norm(const AmbientSpace& space, const Vector& x);

// The n-1 conditioning vectors c_2, ..., c_n that a rank-n inner product
// holds fixed.  Must be linearly independent; n = 1 (no vectors) recovers
// the plain inner product of the space.
class ConditioningTuple {
 public:
  ConditioningTuple(AmbientSpace space, std::vector<Vector> vectors);

  const AmbientSpace& space() const { return space_; }
  const std::vector<Vector>& vectors() const { return vectors_; }
  std::size_t order_n() const { return vectors_.size() + 1; }

  friend bool operator==(const ConditioningTuple&, const ConditioningTuple&) = default;

 private:
  AmbientSpace space_;
  std::vector<Vector> vectors_;
};

// Rank-n inner product <x, y | c_2 ... c_n>: the determinant of the n x n
// matrix that borders the pairwise inner products of the conditioning
// vectors with the row <x, .> and column <., y>.  Degenerates exactly on
// the span of the conditioning tuple.
Complex n_inner(const AmbientSpace& space, const Vector& x, const Vector& y, const ConditioningTuple& cond);

// sqrt of the real part of n_inner(x, x); tiny negative values from
// roundoff are clamped to zero.
double n_norm(const AmbientSpace& space, const Vector& x, const ConditioningTuple& cond);

// Coefficient matrix N of the rank-n pairing on coordinates:
// n_inner(x, y) = y* . N . x, so N(i, j) = n_inner(e_j, e_i).
// Hermitian positive semidefinite with kernel spanned by the tuple.
Matrix conditioned_gram(const AmbientSpace& space, const ConditioningTuple& cond);

}  // namespace nframe
