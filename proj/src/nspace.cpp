#include "nframe/nspace.hpp"

#include <cmath>
#include <utility>

#include "nframe/errors.hpp"
#include "nframe/tolerances.hpp"

namespace nframe {

AmbientSpace::AmbientSpace(std::size_t dim_in, Matrix gram_in, std::string label_in)
    : dim(dim_in), gram(std::move(gram_in)), label(std::move(label_in)) {
  if (gram.rows() != dim || gram.cols() != dim) throw DimensionError("gram matrix does not match the space dimension");
  if (!gram.is_finite()) throw InvalidInputError("gram matrix has non-finite entries");
  const double scale = frobenius_norm(gram);
  if (scale == 0.0 && dim > 0) throw InvalidInputError("gram matrix is zero");
  if (dim > 0) {
    if (frobenius_norm(gram - gram.adjoint()) > tol::herm() * scale)
      throw InvalidInputError("gram matrix is not Hermitian");
    EigResult eig = herm_eig(gram);
    if (eig.values.front() <= tol::rank() * eig.values.back())
      throw InvalidInputError("gram matrix is not positive definite");
  }
}

Complex base_inner(const AmbientSpace& space, const Vector& x, const Vector& y) {
  if (x.dim() != space.dim || y.dim() != space.dim) throw DimensionError("inner product operand dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < space.dim; ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < space.dim; ++j) row += space.gram(i, j) * x[j];
    s += std::conj(y[i]) * row;
  }
  return s;
}

double base_norm(const AmbientSpace& space, const Vector& x) {
  const double sq = base_inner(space, x, x).real();
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

ConditioningTuple::ConditioningTuple(AmbientSpace space, std::vector<Vector> vectors)
    : space_(std::move(space)), vectors_(std::move(vectors)) {
  if (space_.dim < order_n()) throw DimensionError("space too small for the conditioning order");
  for (const Vector& v : vectors_) {
    if (v.dim() != space_.dim) throw DimensionError("conditioning vector dimension mismatch");
    if (!v.is_finite()) throw InvalidInputError("conditioning vector has non-finite entries");
  }
  if (!vectors_.empty() && numeric_rank(Matrix::from_columns(vectors_)) < vectors_.size())
    throw InvalidInputError("conditioning vectors are linearly dependent");
}

namespace {

void check_compatible(const AmbientSpace& space, const ConditioningTuple& cond) {
  if (cond.space().dim != space.dim || cond.space().gram != space.gram)
    throw DimensionError("conditioning tuple belongs to a different space");
}

}  // namespace

Complex n_inner(const AmbientSpace& space, const Vector& x, const Vector& y, const ConditioningTuple& cond) {
  check_compatible(space, cond);
  if (x.dim() != space.dim || y.dim() != space.dim) throw DimensionError("n_inner operand dimension mismatch");
  const std::vector<Vector>& c = cond.vectors();
  const std::size_t n = c.size() + 1;
  Matrix m(n, n);
  m(0, 0) = base_inner(space, x, y);
  for (std::size_t j = 1; j < n; ++j) m(0, j) = base_inner(space, x, c[j - 1]);
  for (std::size_t i = 1; i < n; ++i) {
    m(i, 0) = base_inner(space, c[i - 1], y);
    for (std::size_t j = 1; j < n; ++j) m(i, j) = base_inner(space, c[i - 1], c[j - 1]);
  }
  return det(m);
}

double n_norm(const AmbientSpace& space, const Vector& x, const ConditioningTuple& cond) {
  const Complex sq = n_inner(space, x, x, cond);
  // The quadratic form is real and nonnegative up to roundoff; anything
  // more negative than the eigenvalue tolerance is a genuine error.
  double scale = 1.0;
  const double xnorm = base_norm(space, x);
  scale *= xnorm * xnorm;
  for (const Vector& c : cond.vectors()) {
    const double cn = base_norm(space, c);
    scale *= cn * cn;
  }
  if (sq.real() < -tol::eig() * std::max(scale, 1.0))
    throw ContractError("n_norm: quadratic form came out negative");
  return sq.real() > 0.0 ? std::sqrt(sq.real()) : 0.0;
}

Matrix conditioned_gram(const AmbientSpace& space, const ConditioningTuple& cond) {
  check_compatible(space, cond);
  const std::size_t d = space.dim;
  Matrix n_mat(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    // N(i, j) = n_inner(e_j, e_i); fill the upper triangle and mirror,
    // since the pairing is conjugate-symmetric.
    for (std::size_t j = i; j < d; ++j) {
      const Complex v = n_inner(space, Vector::unit(d, j), Vector::unit(d, i), cond);
      n_mat(i, j) = v;
      n_mat(j, i) = std::conj(v);
    }
  }
  return n_mat;
}

}  // namespace nframe
