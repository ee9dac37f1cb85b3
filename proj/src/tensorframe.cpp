#include "nframe/tensorframe.hpp"

#include <cmath>
#include <utility>

#include "nframe/errors.hpp"
#include "nframe/tolerances.hpp"

namespace nframe {

namespace {

std::string joined_label(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return "";
  return a + " (x) " + b;
}

std::vector<Vector> flatten_pairs(const std::vector<std::pair<Vector, Vector>>& pairs) {
  std::vector<Vector> flat;
  flat.reserve(pairs.size());
  for (const auto& [a, b] : pairs) flat.push_back(kron(a, b));
  return flat;
}

}  // namespace

TensorSpace tensor_spaces(const AmbientSpace& left, const AmbientSpace& right) {
  AmbientSpace product(left.dim * right.dim, kron(left.gram, right.gram),
                       joined_label(left.label, right.label));
  return {left, right, std::move(product)};
}

TensorFixing::TensorFixing(TensorSpace spaces, std::vector<std::pair<Vector, Vector>> pairs)
    : spaces_(std::move(spaces)),
      pairs_(std::move(pairs)),
      flattened_(spaces_.product, flatten_pairs(pairs_)) {
  for (const auto& [a, b] : pairs_) {
    if (a.dim() != spaces_.left.dim || b.dim() != spaces_.right.dim)
      throw DimensionError("tensor fixing pair dimension mismatch");
  }
}

ConditioningTuple TensorFixing::left_tuple() const {
  std::vector<Vector> vs;
  vs.reserve(pairs_.size());
  for (const auto& [a, b] : pairs_) vs.push_back(a);
  return ConditioningTuple(spaces_.left, std::move(vs));
}

ConditioningTuple TensorFixing::right_tuple() const {
  std::vector<Vector> vs;
  vs.reserve(pairs_.size());
  for (const auto& [a, b] : pairs_) vs.push_back(b);
  return ConditioningTuple(spaces_.right, std::move(vs));
}

QuotientSpace tensor_quotient(const TensorFixing& fixing) {
  return QuotientSpace(fixing.spaces().product, fixing.flattened());
}

Matrix tensor_pairing(const AmbientSpace& left_space, const ConditioningTuple& left_cond,
                      const AmbientSpace& right_space, const ConditioningTuple& right_cond) {
  return kron(conditioned_gram(left_space, left_cond), conditioned_gram(right_space, right_cond));
}

TensorFrame::TensorFrame(Frame left, Frame right)
    : left_(std::move(left)),
      right_(std::move(right)),
      fixing_(
          tensor_spaces(left_.space().ambient(), right_.space().ambient()),
          [&] {
            const auto& lv = left_.space().fixing().vectors();
            const auto& rv = right_.space().fixing().vectors();
            if (lv.size() != rv.size()) throw DimensionError("factor conditioning orders differ");
            std::vector<std::pair<Vector, Vector>> ps;
            ps.reserve(lv.size());
            for (std::size_t k = 0; k < lv.size(); ++k) ps.emplace_back(lv[k], rv[k]);
            return ps;
          }()),
      full_quotient_(tensor_quotient(fixing_)) {
  pairing_ = tensor_pairing(fixing_.spaces().left, left_.space().fixing(), fixing_.spaces().right,
                            right_.space().fixing());
  working_basis_ = kron(left_.space().mf_basis(), right_.space().mf_basis());

  // Honest Gram of the working basis under the product pairing.
  const Matrix pw = pairing_ * working_basis_;
  working_gram_ = working_basis_.adjoint() * pw;
  working_gram_inv_ = inverse(working_gram_);

  product_vectors_.reserve(left_.size() * right_.size());
  for (std::size_t i = 0; i < left_.size(); ++i)
    for (std::size_t j = 0; j < right_.size(); ++j)
      product_vectors_.push_back(kron(left_.vectors()[i], right_.vectors()[j]));

  synthesis_ = Matrix(working_dim(), product_vectors_.size());
  for (std::size_t c = 0; c < product_vectors_.size(); ++c) {
    const Vector coords = working_project(product_vectors_[c]);
    for (std::size_t r = 0; r < working_dim(); ++r) synthesis_(r, c) = coords[r];
  }

  bounds_ = bounds_from_synthesis(synthesis_, working_gram_);
}

Vector TensorFrame::working_project(const Vector& x) const {
  if (x.dim() != fixing_.spaces().product.dim)
    throw DimensionError("working_project: vector dimension mismatch");
  // Solve Gram system for the pairing coefficients against the basis; the
  // degenerate directions of the pairing drop out on their own.
  const Vector rhs = working_basis_.adjoint() * (pairing_ * x);
  return working_gram_inv_ * rhs;
}

Vector TensorFrame::lift(const Vector& coords) const {
  if (coords.dim() != working_dim()) throw DimensionError("lift: coordinate dimension mismatch");
  return working_basis_ * coords;
}

Complex TensorFrame::tensor_inner(const Vector& x, const Vector& y) const {
  if (x.dim() != fixing_.spaces().product.dim || y.dim() != fixing_.spaces().product.dim)
    throw DimensionError("tensor_inner operand dimension mismatch");
  Complex s = 0.0;
  const std::size_t d = x.dim();
  for (std::size_t i = 0; i < d; ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < d; ++j) row += pairing_(i, j) * x[j];
    s += std::conj(y[i]) * row;
  }
  return s;
}

double TensorFrame::tensor_norm(const Vector& x) const {
  const double sq = tensor_inner(x, x).real();
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

TensorFrame tensor_frame(const Frame& pf, const Frame& qf) { return TensorFrame(pf, qf); }

Matrix tensor_frame_operator(const TensorFrame& tf) {
  const Matrix s = op_from_synthesis(tf.synthesis_matrix(), tf.working_gram());
  const Matrix expected = kron(frame_operator(tf.left()), frame_operator(tf.right()));
  const double scale = std::max(frobenius_norm(expected), 1e-300);
  if (frobenius_norm(s - expected) > tol::t1e9() * scale)
    throw ContractError("tensor frame operator does not factor over the Kronecker product");
  if (frame_bounds(tf.left()).is_frame && frame_bounds(tf.right()).is_frame) {
    const Matrix s_inv = inverse(s);
    const Matrix expected_inv =
        kron(inverse(frame_operator(tf.left())), inverse(frame_operator(tf.right())));
    const double inv_scale = std::max(frobenius_norm(expected_inv), 1e-300);
    if (frobenius_norm(s_inv - expected_inv) > tol::t1e9() * inv_scale)
      throw ContractError("inverse tensor frame operator does not factor");
  }
  return s;
}

TensorEquivalenceReport check_tensor_equivalence(const TensorFrame& tf) {
  TensorEquivalenceReport rep;
  rep.left = frame_bounds(tf.left());
  rep.right = frame_bounds(tf.right());
  rep.product = tf.bounds();
  const bool factors = rep.left.is_frame && rep.right.is_frame;
  rep.forward_consistent = !factors || rep.product.is_frame;
  rep.backward_consistent = !rep.product.is_frame || factors;
  rep.closed_form_valid = rep.right.is_frame;
  if (rep.closed_form_valid) {
    // Pushing the product inequality through the right factor leaves
    // bounds for the left family that the optimal ones must beat.
    rep.a1 = rep.product.lower / rep.right.upper;
    rep.b1 = rep.product.upper / rep.right.lower;
    const double slack = tol::t1e8() * std::max(1.0, rep.product.upper);
    rep.a1_within = rep.a1 <= rep.left.lower + slack;
    rep.b1_within = rep.b1 >= rep.left.upper - slack;
  }
  return rep;
}

InverseImageResult inverse_image_frame(const TensorFrame& tf) {
  if (!tf.bounds().is_frame) throw InvalidInputError("inverse image: product operator is singular");
  const Matrix s = op_from_synthesis(tf.synthesis_matrix(), tf.working_gram());
  const Matrix s_inv = inverse(s);

  InverseImageResult out;
  const Matrix image_coords = s_inv * tf.synthesis_matrix();
  out.vectors.reserve(image_coords.cols());
  for (std::size_t j = 0; j < image_coords.cols(); ++j) out.vectors.push_back(tf.lift(image_coords.column(j)));

  // The family's own operator, assembled from its projected coordinates.
  Matrix family_synthesis(tf.working_dim(), out.vectors.size());
  for (std::size_t j = 0; j < out.vectors.size(); ++j) {
    const Vector c = tf.working_project(out.vectors[j]);
    for (std::size_t i = 0; i < tf.working_dim(); ++i) family_synthesis(i, j) = c[i];
  }
  out.op = op_from_synthesis(family_synthesis, tf.working_gram());
  out.bounds = bounds_from_synthesis(family_synthesis, tf.working_gram());
  out.op_residual = frobenius_norm(out.op - s_inv) / std::max(frobenius_norm(s_inv), 1e-300);

  const FrameBounds lb = frame_bounds(tf.left());
  const FrameBounds rb = frame_bounds(tf.right());
  const double a = lb.lower, b = lb.upper, c = rb.lower, d = rb.upper;
  out.interval_lo = (a * c) / (b * b * d * d);
  out.interval_hi = (b * d) / (a * a * c * c);
  const double slack = tol::t1e8() * std::max(1.0, out.interval_hi);
  out.bounds_within_interval = out.bounds.lower >= out.interval_lo - slack &&
                               out.bounds.upper <= out.interval_hi + slack;
  return out;
}

OperatorImageResult operator_image_frame(const TensorFrame& tf, const Matrix& u, const Matrix& v) {
  if (!tf.bounds().is_frame) throw InvalidInputError("operator image: base family is not a frame");
  const std::size_t kl = tf.left().space().dim();
  const std::size_t kr = tf.right().space().dim();
  if (u.rows() != kl || u.cols() != kl) throw DimensionError("left operator shape mismatch");
  if (v.rows() != kr || v.cols() != kr) throw DimensionError("right operator shape mismatch");

  OperatorImageResult out;
  const Matrix k = kron(u, v);
  out.kron_invertible = numeric_rank(k) == k.rows();

  const Matrix image_coords = k * tf.synthesis_matrix();
  out.vectors.reserve(image_coords.cols());
  for (std::size_t j = 0; j < image_coords.cols(); ++j) out.vectors.push_back(tf.lift(image_coords.column(j)));

  Matrix family_synthesis(tf.working_dim(), out.vectors.size());
  for (std::size_t j = 0; j < out.vectors.size(); ++j) {
    const Vector c = tf.working_project(out.vectors[j]);
    for (std::size_t i = 0; i < tf.working_dim(); ++i) family_synthesis(i, j) = c[i];
  }
  out.bounds = bounds_from_synthesis(family_synthesis, tf.working_gram());
  out.is_frame = out.bounds.is_frame;
  out.op = op_from_synthesis(family_synthesis, tf.working_gram());
  if (out.is_frame) {
    const Matrix s = op_from_synthesis(tf.synthesis_matrix(), tf.working_gram());
    const Matrix expected = k * s * k.adjoint();
    out.op_residual = frobenius_norm(out.op - expected) / std::max(frobenius_norm(expected), 1e-300);
  }
  return out;
}

namespace {

DualCheck product_dual_check(const TensorFrame& a, const TensorFrame& b) {
  DualCheck out;
  out.residual_fg = dual_residual(a.synthesis_matrix(), b.synthesis_matrix(), a.working_gram());
  out.residual_gf = dual_residual(b.synthesis_matrix(), a.synthesis_matrix(), a.working_gram());
  out.dual = out.residual_fg <= tol::dual() && out.residual_gf <= tol::dual();
  return out;
}

}  // namespace

TensorDualResult tensor_dual(const Frame& f, const Frame& f_dual, const Frame& g, const Frame& g_dual) {
  TensorDualResult out;
  out.left = is_dual_pair(f, f_dual);
  out.right = is_dual_pair(g, g_dual);
  if (!out.left.dual) throw InvalidInputError("tensor dual: left pair is not dual");
  if (!out.right.dual) throw InvalidInputError("tensor dual: right pair is not dual");
  const TensorFrame tfg = tensor_frame(f, g);
  const TensorFrame tdd = tensor_frame(f_dual, g_dual);
  out.product = product_dual_check(tfg, tdd);
  return out;
}

namespace {

Frame transported(const Frame& f, const Matrix& u) {
  std::vector<Vector> vs;
  vs.reserve(f.size());
  for (std::size_t j = 0; j < f.size(); ++j)
    vs.push_back(f.space().lift(u * f.synthesis_matrix().column(j)));
  return Frame(f.space(), std::move(vs));
}

void require_unitary(const Matrix& u, const char* side) {
  const Matrix gap = u.adjoint() * u - Matrix::identity(u.cols());
  if (frobenius_norm(gap) > tol::t1e9() * std::max(1.0, frobenius_norm(u)))
    throw InvalidInputError(std::string("transport operator is not unitary: ") + side);
}

}  // namespace

TensorDualResult unitary_transport_dual(const Frame& f, const Frame& f_dual, const Frame& g,
                                        const Frame& g_dual, const Matrix& u, const Matrix& v) {
  require_unitary(u, "left");
  require_unitary(v, "right");
  // Establish duality of the inputs before transporting anything.
  if (!is_dual_pair(f, f_dual).dual) throw InvalidInputError("transport: left pair is not dual");
  if (!is_dual_pair(g, g_dual).dual) throw InvalidInputError("transport: right pair is not dual");
  return tensor_dual(transported(f, u), transported(f_dual, u), transported(g, v), transported(g_dual, v));
}

}  // namespace nframe
