#include "nframe/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "nframe/errors.hpp"
#include "nframe/tolerances.hpp"

namespace nframe {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace

Vector Vector::unit(std::size_t dim, std::size_t index) {
  require(index < dim, "unit vector index out of range");
  Vector v(dim);
  v[index] = 1.0;
  return v;
}

bool Vector::is_finite() const {
  for (const Complex& z : e_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double Vector::norm2() const {
  double s = 0.0;
  for (const Complex& z : e_) s += std::norm(z);
  return std::sqrt(s);
}

Vector& Vector::operator+=(const Vector& o) {
  require(dim() == o.dim(), "vector sum dimension mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  require(dim() == o.dim(), "vector difference dimension mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Vector& Vector::operator*=(Complex s) {
  for (Complex& z : e_) z *= s;
  return *this;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  e_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix initialiser");
    e_.insert(e_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols) {
  if (cols.empty()) return Matrix();
  const std::size_t rows = cols.front().dim();
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].dim() == rows, "columns of unequal length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  require(j < cols_, "column index out of range");
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  require(i < rows_, "row index out of range");
  Vector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

bool Matrix::is_finite() const {
  for (const Complex& z : e_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference shape mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (Complex& z : e_) z *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.rows_, "matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  require(a.cols_ == v.dim(), "matrix-vector shape mismatch");
  Vector r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

double operator_norm(const Matrix& m) {
  const std::vector<double> sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.front();
}

namespace {

// In-place LU with partial pivoting.  Returns the permutation sign, or 0
// when a pivot column is exactly zero (the matrix is singular to working
// precision and the elimination cannot continue).
int lu_decompose(Matrix& a, std::vector<std::size_t>& perm) {
  const std::size_t n = a.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = std::abs(a(i, k));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (best == 0.0) return 0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      std::swap(perm[k], perm[pivot]);
      sign = -sign;
    }
    const Complex inv_pivot = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = a(i, k) * inv_pivot;
      a(i, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return sign;
}

Vector lu_solve_one(const Matrix& lu, const std::vector<std::size_t>& perm, const Vector& b) {
  const std::size_t n = lu.rows();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (std::size_t i = 1; i < n; ++i) {
    Complex s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    Complex s = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x[j];
    x[ii] = s / lu(ii, ii);
  }
  return x;
}

}  // namespace

Complex det(const Matrix& m) {
  require(m.is_square(), "determinant of a non-square matrix");
  if (m.rows() == 0) return 1.0;
  Matrix lu = m;
  std::vector<std::size_t> perm;
  const int sign = lu_decompose(lu, perm);
  if (sign == 0) return 0.0;
  Complex d = static_cast<double>(sign);
  for (std::size_t i = 0; i < lu.rows(); ++i) d *= lu(i, i);
  return d;
}

Vector solve(const Matrix& a, const Vector& b) {
  require(a.is_square(), "solve needs a square matrix");
  require(a.rows() == b.dim(), "solve shape mismatch");
  Matrix lu = a;
  std::vector<std::size_t> perm;
  if (lu_decompose(lu, perm) == 0) throw ContractError("solve: singular matrix");
  return lu_solve_one(lu, perm, b);
}

Matrix solve(const Matrix& a, const Matrix& b) {
  require(a.is_square(), "solve needs a square matrix");
  require(a.rows() == b.rows(), "solve shape mismatch");
  Matrix lu = a;
  std::vector<std::size_t> perm;
  if (lu_decompose(lu, perm) == 0) throw ContractError("solve: singular matrix");
  Matrix x(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const Vector col = lu_solve_one(lu, perm, b.column(j));
    for (std::size_t i = 0; i < a.rows(); ++i) x(i, j) = col[i];
  }
  return x;
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

namespace {

// One Jacobi rotation annihilating the (p, q) entry of the Hermitian
// working copy h, accumulated into v.  The complex entry is first rotated
// onto the real axis, then the standard 2x2 symmetric rotation applies.
void jacobi_rotate(Matrix& h, Matrix& v, std::size_t p, std::size_t q) {
  const Complex hpq = h(p, q);
  const double r = std::abs(hpq);
  if (r == 0.0) {
    h(q, p) = 0.0;
    return;
  }
  const Complex omega = hpq / r;  // h(p, q) = r * omega
  const double alpha = h(p, p).real();
  const double gamma = h(q, q).real();
  const double tau = (gamma - alpha) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // Plane transform U: column p gets (c, -conj(omega) s), column q gets
  // (s, conj(omega) c); update h <- U* h U and v <- v U.
  const Complex wbar = std::conj(omega);
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const Complex hkp = h(k, p);
    const Complex hkq = h(k, q);
    h(k, p) = c * hkp - wbar * s * hkq;
    h(k, q) = s * hkp + wbar * c * hkq;
    h(p, k) = std::conj(h(k, p));
    h(q, k) = std::conj(h(k, q));
  }
  h(p, p) = alpha * c * c - 2.0 * s * c * r + gamma * s * s;
  h(q, q) = alpha * s * s + 2.0 * s * c * r + gamma * c * c;
  h(p, q) = 0.0;
  h(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - wbar * s * vkq;
    v(k, q) = s * vkp + wbar * c * vkq;
  }
}

double off_diagonal_norm(const Matrix& h) {
  double s = 0.0;
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(h(i, j));
  return std::sqrt(s);
}

}  // namespace

EigResult herm_eig(const Matrix& m) {
  require(m.is_square(), "eigendecomposition of a non-square matrix");
  const std::size_t n = m.rows();
  const double scale = frobenius_norm(m);
  if (scale > 0.0) {
    const double skew = frobenius_norm(m - m.adjoint());
    if (skew > tol::herm() * scale) throw ContractError("herm_eig: input is not Hermitian");
  }

  // Work on the Hermitian part so tiny admissible asymmetry cannot leak
  // into the iteration.
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  Matrix v = Matrix::identity(n);

  const double target = 1e-14 * std::max(scale, 1e-300);
  for (int sweep = 0; sweep < 100 && n > 1; ++sweep) {
    if (off_diagonal_norm(h) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(h, v, p, q);
  }
  if (n > 1 && off_diagonal_norm(h) > std::max(tol::eig() * std::max(scale, 1e-300), 1e-13 * scale))
    throw ContractError("herm_eig: Jacobi sweep failed to converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });

  EigResult out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.values[j] = h(src, src).real();
    // Fix the phase: rotate the largest-magnitude entry onto the positive
    // real axis so that repeated runs agree bit for bit.
    std::size_t lead = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, src));
      if (mag > best + 1e-15) {
        best = mag;
        lead = i;
      }
    }
    Complex phase = 1.0;
    if (best > 0.0) phase = std::conj(v(lead, src)) / std::abs(v(lead, src));
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = phase * v(i, src);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector k(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) k[i * b.dim() + j] = a[i] * b[j];
  return k;
}

std::vector<double> singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  // Use the smaller of m* m and m m* so the eigenproblem stays compact.
  const Matrix gram = m.rows() >= m.cols() ? m.adjoint() * m : m * m.adjoint();
  EigResult eig = herm_eig(gram);
  std::vector<double> sv(eig.values.size());
  for (std::size_t i = 0; i < sv.size(); ++i) {
    const double lambda = eig.values[sv.size() - 1 - i];
    sv[i] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  return sv;
}

std::size_t numeric_rank(const Matrix& m) {
  const std::vector<double> sv = singular_values(m);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cutoff = tol::rank() * sv.front();
  std::size_t r = 0;
  for (double s : sv)
    if (s > cutoff) ++r;
  return r;
}

Whitening hpd_whitening(const Matrix& gram) {
  EigResult eig = herm_eig(gram);
  const std::size_t n = gram.rows();
  if (n == 0) return {Matrix(), Matrix()};
  if (eig.values.front() <= 0.0) throw ContractError("hpd_whitening: matrix is not positive definite");
  Matrix w(n, n);
  Matrix w_inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double root = std::sqrt(eig.values[i]);
    for (std::size_t j = 0; j < n; ++j) {
      w(i, j) = root * std::conj(eig.vectors(j, i));
      w_inv(i, j) = eig.vectors(i, j) / std::sqrt(eig.values[j]);
    }
  }
  return {std::move(w), std::move(w_inv)};
}

Matrix hpd_sqrt_inverse(const Matrix& m) {
  EigResult eig = herm_eig(m);
  const std::size_t n = m.rows();
  if (n == 0) return Matrix();
  if (eig.values.front() <= 0.0) throw ContractError("hpd_sqrt_inverse: matrix is not positive definite");
  Matrix scaled(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double inv_root = 1.0 / std::sqrt(eig.values[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) = eig.vectors(i, j) * inv_root;
  }
  return scaled * eig.vectors.adjoint();
}

}  // namespace nframe
