#pragma once

#include <vector>

#include "nframe/dense.hpp"
#include "nframe/quotient.hpp"

namespace nframe {

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool is_frame = false;
  bool is_tight = false;
};

// A finite family of ambient vectors regarded as elements of the quotient
// space.  The synthesis matrix (quotient coordinates of each vector, one
// column per family member) is computed once at construction.
class Frame {
 public:
  Frame(QuotientSpace space, std::vector<Vector> vectors);

  const QuotientSpace& space() const { return space_; }
  const std::vector<Vector>& vectors() const { return vectors_; }
  std::size_t size() const { return vectors_.size(); }
  const Matrix& synthesis_matrix() const { return synthesis_; }

 private:
  QuotientSpace space_;
  std::vector<Vector> vectors_;
  Matrix synthesis_;
};

// Coefficient sequence <p, p_i> of an ambient vector against the family.
Vector analysis(const Frame& f, const Vector& p);

// Ambient vector sum_i c_i p_i (through the quotient representatives).
Vector synthesis(const Frame& f, const Vector& coeffs);

// Frame operator on quotient coordinates: p -> sum_i <p, p_i> p_i.
// Self-adjoint for the induced pairing and positive semidefinite.
Matrix frame_operator(const Frame& f);

// Optimal bounds: extremal eigenvalues of the frame operator after
// whitening by the induced gram.  lower > tol::frame() * upper decides
// is_frame; a relative gap under tol::tight() decides is_tight.
FrameBounds frame_bounds(const Frame& f);

// Canonical dual family S^{-1} p_i, returned as ambient vectors inside M.
// Requires the family to be a frame.
Frame canonical_dual(const Frame& f);

struct DualCheck {
  bool dual = false;
  double residual_fg = 0.0;  // || T_f T_g* - id ||_F
  double residual_gf = 0.0;  // || T_g T_f* - id ||_F
};

// Two families over the same quotient are dual when either composition of
// one synthesis with the other's analysis is the identity; both residuals
// are reported and both must clear tol::dual().
DualCheck is_dual_pair(const Frame& f, const Frame& g);

// Shared kernels, usable on any (synthesis, gram) pair.
Matrix op_from_synthesis(const Matrix& synthesis, const Matrix& gram);
FrameBounds bounds_from_synthesis(const Matrix& synthesis, const Matrix& gram);
double dual_residual(const Matrix& synth_f, const Matrix& synth_g, const Matrix& gram);
FrameBounds classify_bounds(double lower, double upper);

}  // namespace nframe
