#include "nframe/quotient.hpp"

#include <utility>

#include "nframe/errors.hpp"
#include "nframe/tolerances.hpp"

namespace nframe {

QuotientSpace::QuotientSpace(AmbientSpace ambient, ConditioningTuple fixing)
    : ambient_(std::move(ambient)), fixing_(std::move(fixing)) {
  if (fixing_.space().dim != ambient_.dim || fixing_.space().gram != ambient_.gram)
    throw DimensionError("fixing tuple belongs to a different space");
  const std::size_t d = ambient_.dim;
  const std::size_t n_minus_1 = fixing_.vectors().size();
  const std::size_t k = d - n_minus_1;

  Matrix b0;
  if (n_minus_1 == 0) {
    b0 = Matrix::identity(d);
    coset_killer_ = Matrix(0, d);
  } else {
    // M is the kernel of a* g (a = fixing columns, g = ambient gram): the
    // vectors orthogonal to every fixing vector.  Taking the k smallest
    // eigenvectors of (g a)(g a)* finds it without forming a rank-revealing
    // factorisation by hand.
    fixing_matrix_ = Matrix::from_columns(fixing_.vectors());
    const Matrix& a = fixing_matrix_;
    const Matrix ga = ambient_.gram * a;
    EigResult eig = herm_eig(ga * ga.adjoint());
    const double top = eig.values.back();
    if (eig.values[k - 1] > 1e-10 * top || eig.values[k] <= 1e-10 * top)
      throw InvalidInputError("fixing tuple is numerically degenerate");
    b0 = Matrix(d, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < d; ++i) b0(i, j) = eig.vectors(i, j);
    // p - a . coset_killer_ . p lies in M for every p.
    coset_killer_ = solve(a.adjoint() * ambient_.gram * a, a.adjoint() * ambient_.gram);
  }

  // Orthonormalise b0 for the induced pairing with the symmetric (inverse
  // square root) transform, which keeps the columns as close to b0 as
  // possible; in particular coordinate-aligned complements stay aligned.
  Matrix gamma0(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const Complex v = n_inner(ambient_, b0.column(j), b0.column(i), fixing_);
      gamma0(i, j) = v;
      gamma0(j, i) = std::conj(v);
    }
  Matrix t;
  try {
    t = hpd_sqrt_inverse(gamma0);
  } catch (const ContractError&) {
    throw InvalidInputError("induced pairing is degenerate on the complement");
  }
  mf_basis_ = b0 * t;

  induced_gram_ = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const Complex v = n_inner(ambient_, mf_basis_.column(j), mf_basis_.column(i), fixing_);
      induced_gram_(i, j) = v;
      induced_gram_(j, i) = std::conj(v);
    }
  EigResult check = herm_eig(induced_gram_);
  if (check.values.front() <= 0.0) throw ContractError("induced gram is not positive definite");

  basis_pinv_ = solve(mf_basis_.adjoint() * mf_basis_, mf_basis_.adjoint());
}

Vector QuotientSpace::project(const Vector& p) const {
  if (p.dim() != ambient_.dim) throw DimensionError("project: vector dimension mismatch");
  Vector m = p;
  if (coset_killer_.rows() > 0) m -= fixing_matrix_ * (coset_killer_ * p);
  return basis_pinv_ * m;
}

Vector QuotientSpace::lift(const Vector& coords) const {
  if (coords.dim() != dim()) throw DimensionError("lift: coordinate dimension mismatch");
  return mf_basis_ * coords;
}

Complex QuotientSpace::induced_inner(const Vector& p, const Vector& q) const {
  return n_inner(ambient_, p, q, fixing_);
}

double QuotientSpace::induced_norm(const Vector& p) const { return n_norm(ambient_, p, fixing_); }

QuotientSpace build_quotient(const AmbientSpace& space, const ConditioningTuple& fixing) {
  return QuotientSpace(space, fixing);
}

}  // namespace nframe
