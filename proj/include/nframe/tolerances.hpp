#pragma once

namespace nframe::tol {

// Global multiplier for every tolerance below, read once per process from
// the environment variable NFRAME_TOLERANCE_SCALE (default 1.0).
double scale();

// Relative Frobenius deviation allowed between a matrix and its adjoint
// before the eigensolver refuses the input.
inline double herm() { return 1e-8 * scale(); }

// Off-diagonal mass (relative to the Frobenius norm) at which the Jacobi
// sweep is considered converged.
inline double eig() { return 1e-8 * scale(); }

// Singular values below rank() times the largest are treated as zero.
// Singular values come from the eigenvalues of m* m, so anything under
// sqrt(machine epsilon) relative to the largest is indistinguishable from
// noise; the cutoff sits an order of magnitude above that floor.
inline double rank() { return 1e-7 * scale(); }

// A lower frame bound below frame() times the upper bound means "not a
// frame"; keeps the verdict stable under roundoff in the eigenvalues.
inline double frame() { return 1e-8 * scale(); }

// Relative gap between the bounds under which a frame counts as tight.
inline double tight() { return 1e-9 * scale(); }

// Residual ceiling for dual-pair checks.
inline double dual() { return 1e-8 * scale(); }

// Generic check tolerances used by the verification suites; the suffix is
// the unscaled magnitude.
inline double t1e8() { return 1e-8 * scale(); }
inline double t1e9() { return 1e-9 * scale(); }
inline double t1e10() { return 1e-10 * scale(); }

}  // namespace nframe::tol
