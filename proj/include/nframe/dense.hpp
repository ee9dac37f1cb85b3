#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace nframe {

using Complex = std::complex<double>;

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : e_(dim) {}
  Vector(std::initializer_list<Complex> entries) : e_(entries) {}
  explicit Vector(std::vector<Complex> entries) : e_(std::move(entries)) {}

  static Vector zero(std::size_t dim) { return Vector(dim); }
  static Vector unit(std::size_t dim, std::size_t index);

  std::size_t dim() const { return e_.size(); }
  Complex& operator[](std::size_t i) { return e_[i]; }
  const Complex& operator[](std::size_t i) const { return e_[i]; }
  const std::vector<Complex>& entries() const { return e_; }

  bool is_finite() const;
  // Euclidean length of the coordinate vector; metric-aware norms live in
  // the space types, not here.
  double norm2() const;

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(Complex s);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Complex s, Vector v) { return v *= s; }
  friend Vector operator*(Vector v, Complex s) { return v *= s; }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<Complex> e_;
};

// Dense complex matrix, row-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<double>& d);
  static Matrix from_columns(const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  Matrix adjoint() const;
  bool is_finite() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Complex s, Matrix m) { return m *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> e_;
};

double frobenius_norm(const Matrix& m);
// Largest singular value.
double operator_norm(const Matrix& m);

// Determinant by Gaussian elimination with partial pivoting.
Complex det(const Matrix& m);

struct EigResult {
  // Ascending eigenvalues; vectors.column(i) is the unit eigenvector for
  // values[i].  Each column is phase-normalised so its largest-magnitude
  // entry is real and positive, which makes the decomposition repeatable.
  std::vector<double> values;
  Matrix vectors;
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Rejects inputs whose anti-Hermitian part exceeds tol::herm() relative.
EigResult herm_eig(const Matrix& m);

// Kronecker product: block at (i, j) is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

// Singular values in descending order, via the Hermitian eigenproblem of
// the smaller Gram matrix.
std::vector<double> singular_values(const Matrix& m);

// Number of singular values above tol::rank() times the largest.
std::size_t numeric_rank(const Matrix& m);

// Solve a x = b / a X = B by LU with partial pivoting; a must be square
// and numerically nonsingular.
Vector solve(const Matrix& a, const Vector& b);
Matrix solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);

// Factor of a Hermitian positive definite matrix: w.adjoint() * w == gram,
// w_inv its inverse.  Built from the eigendecomposition, so w = L^(1/2) V*.
struct Whitening {
  Matrix w;
  Matrix w_inv;
};
Whitening hpd_whitening(const Matrix& gram);

// Inverse square root of a Hermitian positive definite matrix.
Matrix hpd_sqrt_inverse(const Matrix& m);

}  // namespace nframe
