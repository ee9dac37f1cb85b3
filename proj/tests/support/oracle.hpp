#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nframe/dense.hpp"

// Brute-force reference implementations used only by the tests.  Everything
// here takes the slowest honest route: determinants by cofactor expansion,
// ranks by exhaustive minors, eigenvalues by Sylvester inertia counts driven
// through bisection, pencil reduction by a hand-rolled Cholesky factor.
// None of it shares code with the library, so agreement is meaningful.
namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = std::vector<Vec>;  // rows

Mat zeros(std::size_t rows, std::size_t cols);
Mat raw_identity(std::size_t n);

// Determinant by recursive cofactor expansion along the first free row.
C cofactor_det(const Mat& m);

// Largest r such that some r x r minor exceeds tol in magnitude.
std::size_t minor_rank(const Mat& m, double tol);

// Number of eigenvalues of a Hermitian matrix strictly below x, read off
// the signs of the leading principal minors of (m - x id).
std::size_t count_below(const Mat& herm, double x);

// j-th smallest eigenvalue (1-based) by bisection on count_below.
double sturm_eigenvalue(const Mat& herm, std::size_t j);
std::vector<double> sturm_eigenvalues(const Mat& herm);
double sturm_lambda_min(const Mat& herm);
double sturm_lambda_max(const Mat& herm);

Mat raw_kron(const Mat& a, const Mat& b);
Vec raw_kron_vec(const Vec& a, const Vec& b);

// <x, y> = sum_{i,j} conj(y_i) gram[i][j] x_j, linear in x.
C raw_base_inner(const Mat& gram, const Vec& x, const Vec& y);

// Bordered-determinant inner product conditioned on the given vectors,
// evaluated entirely with raw_base_inner and cofactor_det.
C raw_n_inner(const Mat& gram, const Vec& x, const Vec& y, const std::vector<Vec>& cond);
double raw_n_norm(const Mat& gram, const Vec& x, const std::vector<Vec>& cond);

// Coefficient matrix of the conditioned pairing: entry (i, j) is
// raw_n_inner(e_j, e_i).
Mat raw_conditioned_gram(const Mat& gram, const std::vector<Vec>& cond);

struct RawBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t transversal_dim = 0;
};

// Optimal frame bounds by direct quadratic-form extremisation: pick the
// best coordinate transversal of span(cond), assemble the energy and norm
// forms entrywise with raw_n_inner, reduce the pencil with Cholesky and
// take Sturm extremes of the reduced matrix.
RawBounds raw_frame_bounds(const Mat& gram, const std::vector<Vec>& cond,
                           const std::vector<Vec>& family);

// Worst reconstruction defect sqrt|<r, r | cond>| over the probes, where
// r = sum_i <p, dual_i | cond> family_i - p.  Vanishes exactly when
// synthesis against `family` of analysis against `dual` fixes every coset.
double raw_reconstruction_defect(const Mat& gram, const std::vector<Vec>& cond,
                                 const std::vector<Vec>& family,
                                 const std::vector<Vec>& dual_family,
                                 const std::vector<Vec>& probes);

// Bridges to the library containers (layout only, no numerics).
Mat to_raw(const nframe::Matrix& m);
Vec to_raw(const nframe::Vector& v);
std::vector<Vec> to_raw(const std::vector<nframe::Vector>& vs);

}  // namespace oracle
