#include "nframe/frames.hpp"

#include <cmath>
#include <utility>

#include "nframe/errors.hpp"
#include "nframe/tolerances.hpp"

namespace nframe {

Frame::Frame(QuotientSpace space, std::vector<Vector> vectors)
    : space_(std::move(space)), vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw InvalidInputError("frame family is empty");
  for (const Vector& v : vectors_) {
    if (v.dim() != space_.ambient_dim()) throw DimensionError("frame vector dimension mismatch");
    if (!v.is_finite()) throw InvalidInputError("frame vector has non-finite entries");
  }
  synthesis_ = Matrix(space_.dim(), vectors_.size());
  for (std::size_t j = 0; j < vectors_.size(); ++j) {
    const Vector c = space_.project(vectors_[j]);
    for (std::size_t i = 0; i < space_.dim(); ++i) synthesis_(i, j) = c[i];
  }
}

Vector analysis(const Frame& f, const Vector& p) {
  const std::size_t m = f.size();
  Vector out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = f.space().induced_inner(p, f.vectors()[i]);
  return out;
}

Vector synthesis(const Frame& f, const Vector& coeffs) {
  if (coeffs.dim() != f.size()) throw DimensionError("synthesis coefficient count mismatch");
  return f.space().lift(f.synthesis_matrix() * coeffs);
}

Matrix op_from_synthesis(const Matrix& synthesis, const Matrix& gram) {
  // In coordinates with gram Gamma, <p, p_i> = c_i* Gamma p, so the
  // operator p -> sum <p, p_i> p_i is C C* Gamma.
  return synthesis * synthesis.adjoint() * gram;
}

Matrix frame_operator(const Frame& f) {
  return op_from_synthesis(f.synthesis_matrix(), f.space().induced_gram());
}

FrameBounds classify_bounds(double lower, double upper) {
  FrameBounds b;
  b.lower = lower;
  b.upper = upper;
  b.is_frame = upper > 0.0 && lower > tol::frame() * upper;
  b.is_tight = b.is_frame && (upper - lower) / upper <= tol::tight();
  return b;
}

FrameBounds bounds_from_synthesis(const Matrix& synthesis, const Matrix& gram) {
  // The optimal bounds are the extremes of <Sp, p> / <p, p> over the
  // space; whitening the metric turns that into an ordinary extremal
  // eigenvalue problem for (W C)(W C)*.
  const Whitening wh = hpd_whitening(gram);
  const Matrix wc = wh.w * synthesis;
  EigResult eig = herm_eig(wc * wc.adjoint());
  const double lower = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
  const double upper = eig.values.empty() ? 0.0 : std::max(eig.values.back(), 0.0);
  return classify_bounds(lower, upper);
}

FrameBounds frame_bounds(const Frame& f) {
  return bounds_from_synthesis(f.synthesis_matrix(), f.space().induced_gram());
}

Frame canonical_dual(const Frame& f) {
  const FrameBounds b = frame_bounds(f);
  if (!b.is_frame) throw InvalidInputError("canonical dual: frame operator is singular");
  const Matrix s = frame_operator(f);
  const Matrix dual_coords = solve(s, f.synthesis_matrix());
  std::vector<Vector> duals;
  duals.reserve(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) duals.push_back(f.space().lift(dual_coords.column(j)));
  return Frame(f.space(), std::move(duals));
}

DualCheck is_dual_pair(const Frame& f, const Frame& g) {
  if (!(f.space() == g.space())) throw DimensionError("dual check: frames live on different quotients");
  if (f.size() != g.size()) throw DimensionError("dual check: family sizes differ");
  const Matrix& gram = f.space().induced_gram();
  DualCheck out;
  out.residual_fg = dual_residual(f.synthesis_matrix(), g.synthesis_matrix(), gram);
  out.residual_gf = dual_residual(g.synthesis_matrix(), f.synthesis_matrix(), gram);
  out.dual = out.residual_fg <= tol::dual() && out.residual_gf <= tol::dual();
  return out;
}

double dual_residual(const Matrix& synth_f, const Matrix& synth_g, const Matrix& gram) {
  // T_f T_g* on coordinates is C_f C_g* Gamma.
  const Matrix composite = synth_f * synth_g.adjoint() * gram;
  return frobenius_norm(composite - Matrix::identity(composite.rows()));
}

}  // namespace nframe
