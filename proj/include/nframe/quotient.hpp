#pragma once

#include "nframe/dense.hpp"
#include "nframe/nspace.hpp"

namespace nframe {

// The rank-n pairing of (space, fixing) is degenerate exactly on
// L = span(fixing).  Quotienting by L and carrying the pairing over gives
// a genuine Hilbert space; this class realises it on the orthogonal
// complement M of L inside the ambient space, with a basis of M that is
// orthonormal for the induced pairing.
class QuotientSpace {
 public:
  QuotientSpace(AmbientSpace ambient, ConditioningTuple fixing);

  const AmbientSpace& ambient() const { return ambient_; }
  const ConditioningTuple& fixing() const { return fixing_; }

  // ambient.dim - (order_n - 1) columns spanning M, each of ambient.dim
  // coordinates, orthonormal under the induced pairing.
  const Matrix& mf_basis() const { return mf_basis_; }

  // Gram matrix of mf_basis under the induced pairing; identity up to
  // roundoff by construction, but recomputed honestly rather than assumed.
  const Matrix& induced_gram() const { return induced_gram_; }

  std::size_t dim() const { return mf_basis_.cols(); }
  std::size_t ambient_dim() const { return ambient_.dim; }

  // Coordinates (in mf_basis) of the representative of p + L lying in M.
  Vector project(const Vector& p) const;

  // Ambient vector with the given mf_basis coordinates.
  Vector lift(const Vector& coords) const;

  Complex induced_inner(const Vector& p, const Vector& q) const;
  double induced_norm(const Vector& p) const;

  friend bool operator==(const QuotientSpace&, const QuotientSpace&) = default;

 private:
  AmbientSpace ambient_;
  ConditioningTuple fixing_;
  Matrix mf_basis_;
  Matrix induced_gram_;
  Matrix fixing_matrix_;  // fixing vectors as columns (empty when n = 1)
  Matrix coset_killer_;   // maps p to its L-component coefficients
  Matrix basis_pinv_;     // left inverse of mf_basis on M
};

QuotientSpace build_quotient(const AmbientSpace& space, const ConditioningTuple& fixing);

inline Vector project(const QuotientSpace& qs, const Vector& p) { return qs.project(p); }
inline Complex induced_inner(const QuotientSpace& qs, const Vector& p, const Vector& q) {
  return qs.induced_inner(p, q);
}

}  // namespace nframe
