#pragma once

#include <utility>
#include <vector>

#include "nframe/dense.hpp"
#include "nframe/frames.hpp"
#include "nframe/nspace.hpp"
#include "nframe/quotient.hpp"

namespace nframe {

// Tensor product of two ambient spaces; the product metric is the
// Kronecker product of the factor metrics, and coordinates are flattened
// as index_left * dim_right + index_right.
struct TensorSpace {
  AmbientSpace left;
  AmbientSpace right;
  AmbientSpace product;
};

TensorSpace tensor_spaces(const AmbientSpace& left, const AmbientSpace& right);

// Paired conditioning data (a_k, b_k) for a product space.  The flattened
// tuple a_k (x) b_k conditions the product space itself.
class TensorFixing {
 public:
  TensorFixing(TensorSpace spaces, std::vector<std::pair<Vector, Vector>> pairs);

  const TensorSpace& spaces() const { return spaces_; }
  const std::vector<std::pair<Vector, Vector>>& pairs() const { return pairs_; }
  const ConditioningTuple& flattened() const { return flattened_; }

  ConditioningTuple left_tuple() const;
  ConditioningTuple right_tuple() const;

 private:
  TensorSpace spaces_;
  std::vector<std::pair<Vector, Vector>> pairs_;
  ConditioningTuple flattened_;
};

// Quotient of the product space by the span of the flattened tuple.  Note
// its dimension is dim_left * dim_right - (n - 1), which exceeds the
// working dimension (dim_left - n + 1) * (dim_right - n + 1) as soon as
// both factors are nontrivial; both dimensions are reported, not equated.
QuotientSpace tensor_quotient(const TensorFixing& fixing);

// Coefficient matrix of the product pairing
//   <x1 (x) y1, x2 (x) y2> = <x1, x2 | a_2...a_n> . <y1, y2 | b_2...b_n>
// extended sesquilinearly to the whole product space: the Kronecker
// product of the factor conditioned grams.
Matrix tensor_pairing(const AmbientSpace& left_space, const ConditioningTuple& left_cond,
                      const AmbientSpace& right_space, const ConditioningTuple& right_cond);

// The family p_i (x) q_j built from two factor frames, realised on the
// working space spanned by kron(left basis, right basis) with the product
// pairing.  Synthesis coordinates are obtained by projecting each product
// vector with the pairing itself, not assembled from factor coordinates,
// so downstream identities are genuine cross-checks.
class TensorFrame {
 public:
  TensorFrame(Frame left, Frame right);

  const Frame& left() const { return left_; }
  const Frame& right() const { return right_; }
  const TensorFixing& fixing() const { return fixing_; }

  // Row-major over (i, j): element i * right.size() + j is p_i (x) q_j.
  const std::vector<Vector>& product_vectors() const { return product_vectors_; }

  const Matrix& working_basis() const { return working_basis_; }
  const Matrix& working_gram() const { return working_gram_; }
  const Matrix& synthesis_matrix() const { return synthesis_; }
  const Matrix& pairing() const { return pairing_; }

  // Quotient of the full product space by the flattened tuple; kept for
  // dimension reporting alongside the working realisation.
  const QuotientSpace& full_quotient() const { return full_quotient_; }
  std::size_t working_dim() const { return working_basis_.cols(); }

  Vector working_project(const Vector& x) const;
  Vector lift(const Vector& coords) const;
  Complex tensor_inner(const Vector& x, const Vector& y) const;
  double tensor_norm(const Vector& x) const;

  const FrameBounds& bounds() const { return bounds_; }

 private:
  Frame left_;
  Frame right_;
  TensorFixing fixing_;
  std::vector<Vector> product_vectors_;
  Matrix pairing_;
  Matrix working_basis_;
  Matrix working_gram_;
  Matrix working_gram_inv_;
  Matrix synthesis_;
  QuotientSpace full_quotient_;
  FrameBounds bounds_;
};

TensorFrame tensor_frame(const Frame& pf, const Frame& qf);

// Frame operator of the product family on working coordinates.  Checked
// on the way out against kron of the factor operators (and, for frames,
// the same identity for the inverses); a mismatch is a ContractError.
Matrix tensor_frame_operator(const TensorFrame& tf);

struct TensorEquivalenceReport {
  FrameBounds left;
  FrameBounds right;
  FrameBounds product;
  bool forward_consistent = false;   // factors frames  =>  product frame
  bool backward_consistent = false;  // product frame  =>  both factors
  bool closed_form_valid = false;    // right factor operator invertible
  double a1 = 0.0;  // product lower bound pushed through the right factor
  double b1 = 0.0;  // ditto for the upper bound
  bool a1_within = false;  // a1 <= optimal left lower bound (+ slack)
  bool b1_within = false;  // b1 >= optimal left upper bound (- slack)
};

TensorEquivalenceReport check_tensor_equivalence(const TensorFrame& tf);

struct InverseImageResult {
  std::vector<Vector> vectors;  // ambient product vectors of the family
  Matrix op;                    // frame operator of the family
  FrameBounds bounds;
  double op_residual = 0.0;  // relative distance from inverse of the product operator
  double interval_lo = 0.0;  // AC / (B^2 D^2)
  double interval_hi = 0.0;  // BD / (A^2 C^2)
  bool bounds_within_interval = false;
};

// Family S^{-1}(p_i (x) q_j) for a product frame.
InverseImageResult inverse_image_frame(const TensorFrame& tf);

struct OperatorImageResult {
  std::vector<Vector> vectors;
  bool kron_invertible = false;
  FrameBounds bounds;
  bool is_frame = false;
  Matrix op;
  double op_residual = 0.0;  // vs (U1 (x) U2) S (U1 (x) U2)*, when a frame
};

// Family (U1 (x) U2)(p_i (x) q_j); u acts on left working coordinates,
// v on right ones.  tf itself must be a frame.
OperatorImageResult operator_image_frame(const TensorFrame& tf, const Matrix& u, const Matrix& v);

struct TensorDualResult {
  DualCheck left;
  DualCheck right;
  DualCheck product;
};

// Tensor of two dual pairs is a dual pair for the product family; the
// factor pairs must already be dual.
TensorDualResult tensor_dual(const Frame& f, const Frame& f_dual, const Frame& g, const Frame& g_dual);

// Transport of a tensor dual pair along coordinate unitaries u (left) and
// v (right); both must satisfy u* u = id within tolerance.
TensorDualResult unitary_transport_dual(const Frame& f, const Frame& f_dual, const Frame& g,
                                        const Frame& g_dual, const Matrix& u, const Matrix& v);

}  // namespace nframe
