#pragma once

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "nframe/dense.hpp"
#include "nframe/frames.hpp"
#include "nframe/nspace.hpp"
#include "nframe/quotient.hpp"

// Path of the installed command-line binary, forwarded by the test runner;
// empty when the suite runs without it.
extern std::string g_cli_path;

namespace th {

using nframe::AmbientSpace;
using nframe::Complex;
using nframe::ConditioningTuple;
using nframe::Frame;
using nframe::Matrix;
using nframe::QuotientSpace;
using nframe::Vector;

inline AmbientSpace std_space(std::size_t d, std::string label = "") {
  return AmbientSpace(d, Matrix::identity(d), std::move(label));
}

inline Vector e(std::size_t d, std::size_t i) { return Vector::unit(d, i); }

inline Vector rv(std::initializer_list<double> xs) {
  Vector v(xs.size());
  std::size_t i = 0;
  for (double x : xs) v[i++] = Complex(x, 0.0);
  return v;
}

inline Matrix rm(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (double x : row) m(i, j++) = Complex(x, 0.0);
    ++i;
  }
  return m;
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool near_c(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

inline double max_abs_diff(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) return 1e300;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

inline bool near_vec(const Vector& a, const Vector& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

inline bool near_mat(const Matrix& a, const Matrix& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

// Real 3-space with the standard metric, conditioned on e3; the running
// worked example through the frame tests.
inline QuotientSpace r3_quot_e3() {
  AmbientSpace space = std_space(3);
  ConditioningTuple cond(space, {e(3, 2)});
  return QuotientSpace(space, cond);
}

inline Frame frame_e1e1e2() {
  return Frame(r3_quot_e3(), {e(3, 0), e(3, 0), e(3, 1)});
}

inline Frame frame_onb_r3() { return Frame(r3_quot_e3(), {e(3, 0), e(3, 1)}); }

}  // namespace th
