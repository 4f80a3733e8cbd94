#pragma once

// Dense real linear algebra used throughout the library. Everything here is a
// value type; no routine keeps state between calls.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "krein/tolerance.hpp"

namespace krein {

// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix column_vector(std::span<const double> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<double> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> v);

  std::span<const double> entries() const noexcept { return data_; }

  Matrix transpose() const;
  // Columns [first, first + count).
  Matrix columns(std::size_t first, std::size_t count) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

double max_abs(const Matrix& m);
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

// [a | b]
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
Matrix diagonal_matrix(std::span<const double> d);

// Symmetric matrix. Construction from a dense matrix symmetrizes by averaging
// and records the largest |m(i,j) - m(j,i)| that was removed.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m);

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t order() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& dense() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }  // NOLINT(google-explicit-constructor)
  double asymmetry() const noexcept { return asymmetry_; }
  double max_abs() const { return krein::max_abs(m_); }

 private:
  Matrix m_;
  double asymmetry_ = 0.0;
};

// Symmetric tridiagonal matrix held by its two diagonals.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;  // size diag.size() - 1

  std::size_t order() const noexcept { return diag.size(); }
  SymMatrix to_dense() const;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j belongs to values[j]
};

// Lower-triangular L with L L^T = S.
Matrix cholesky(const SymMatrix& s, const ToleranceProfile& tol = {});

// Householder tridiagonalization followed by implicitly shifted QL.
EigenDecomposition sym_eigen(const SymMatrix& s, const ToleranceProfile& tol = {});
std::vector<double> sym_eigenvalues(const SymMatrix& s, const ToleranceProfile& tol = {});

// a v = lambda b v via b = L L^T; returned vectors are b-orthonormal.
EigenDecomposition gen_sym_eigen(const SymMatrix& a, const SymMatrix& b,
                                 const ToleranceProfile& tol = {});
std::vector<double> gen_sym_eigenvalues(const SymMatrix& a, const SymMatrix& b,
                                        const ToleranceProfile& tol = {});

// Principal square root of a positive semidefinite matrix.
SymMatrix spd_sqrt(const SymMatrix& s, const ToleranceProfile& tol = {});

// Inverse of a positive definite matrix through its Cholesky factor.
SymMatrix spd_inverse(const SymMatrix& s, const ToleranceProfile& tol = {});

// Number of eigenvalues strictly below lambda of the symmetric tridiagonal
// matrix (diag, offdiag).
std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag,
                        double lambda);

// The `count` smallest eigenvalues, by bisection on sturm_count.
std::vector<double> tridiagonal_lowest(const Tridiagonal& t, std::size_t count);

// Solves a x = b (a square) by LU with partial pivoting.
Matrix solve(const Matrix& a, const Matrix& b);

// Orthonormal basis of the column span (modified Gram-Schmidt, two passes).
// Throws RankDeficientBasis when a column is numerically dependent.
Matrix orthonormalize(const Matrix& m, const ToleranceProfile& tol = {});

// Orthonormal basis of the complement of span(q), q orthonormal. The first
// nonzero entry of each returned column is positive.
Matrix orthogonal_complement(const Matrix& q);

// Singular values, descending (one-sided Jacobi).
std::vector<double> singular_values(const Matrix& m);

// Largest |eigenvalue|.
double spectral_norm(const SymMatrix& s);

}  // namespace krein
