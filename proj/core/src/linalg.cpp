#include "krein/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "krein/error.hpp"

namespace krein {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(data_.size() == rows * cols, "Matrix: entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    require(row.size() == c, "Matrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::column_vector(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, std::span<const double> v) {
  require(v.size() == rows_, "Matrix::set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  require(first + count <= cols_, "Matrix::columns: out of range");
  Matrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "Matrix +=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "Matrix -=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "Matrix *: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  require(a.cols() == x.size(), "Matrix * vector: shape mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

double max_abs(const Matrix& m) {
  double r = 0.0;
  for (double v : m.entries()) r = std::max(r, std::abs(v));
  return r;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  require(a.rows() == b.rows(), "hstack: row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

Matrix diagonal_matrix(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(const Matrix& m) : m_(m) {
  require(m.rows() == m.cols(), "SymMatrix: matrix must be square");
  require(m.rows() >= 1, "SymMatrix: order must be positive");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = m(i, j);
      const double b = m(j, i);
      asymmetry_ = std::max(asymmetry_, std::abs(a - b));
      const double avg = 0.5 * (a + b);
      m_(i, j) = avg;
      m_(j, i) = avg;
    }
  }
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

SymMatrix SymMatrix::diagonal(std::span<const double> d) { return SymMatrix(diagonal_matrix(d)); }

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  return SymMatrix(Matrix::from_rows(rows));
}

SymMatrix Tridiagonal::to_dense() const {
  const std::size_t n = diag.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i + 1 < n) {
      m(i, i + 1) = offdiag[i];
      m(i + 1, i) = offdiag[i];
    }
  }
  return SymMatrix(m);
}

// ---------------------------------------------------------------------------
// Factorizations

Matrix cholesky(const SymMatrix& s, const ToleranceProfile& tol) {
  const std::size_t n = s.order();
  const double guard = static_cast<double>(n) * tol.cholesky_pivot * s.max_abs();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = s(j, j);
    auto lj = l.row(j);
    for (std::size_t k = 0; k < j; ++k) pivot -= lj[k] * lj[k];
    if (!(pivot > guard)) {
      fail(ErrorCode::NotPositiveDefinite,
           "cholesky: pivot " + std::to_string(pivot) + " at index " + std::to_string(j));
    }
    const double d = std::sqrt(pivot);
    lj[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      auto li = l.row(i);
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= li[k] * lj[k];
      li[j] = v / d;
    }
  }
  return l;
}

namespace {

// Rows of x replaced by L^{-1} x (forward substitution on all columns).
void forward_substitute(const Matrix& l, Matrix& x) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = l(i, k);
      if (lik == 0.0) continue;
      auto xk = x.row(k);
      for (std::size_t j = 0; j < x.cols(); ++j) xi[j] -= lik * xk[j];
    }
    const double inv = 1.0 / l(i, i);
    for (double& v : xi) v *= inv;
  }
}

// Rows of x replaced by L^{-T} x (back substitution with the transpose).
void back_substitute_transpose(const Matrix& l, Matrix& x) {
  const std::size_t n = l.rows();
  for (std::size_t ii = n; ii-- > 0;) {
    auto xi = x.row(ii);
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double lki = l(k, ii);
      if (lki == 0.0) continue;
      auto xk = x.row(k);
      for (std::size_t j = 0; j < x.cols(); ++j) xi[j] -= lki * xk[j];
    }
    const double inv = 1.0 / l(ii, ii);
    for (double& v : xi) v *= inv;
  }
}

// Householder reduction to tridiagonal form (EISPACK tred2 ordering). `w` holds
// the transpose of the accumulated transformation so that the inner loops run
// over contiguous memory; on exit row j of w is column j of the transform.
void tridiagonalize(Matrix& w, std::vector<double>& d, std::vector<double>& e,
                    bool want_vectors) {
  const std::size_t n = w.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  // V(k, j) == w(j, k) throughout.
  for (std::size_t j = 0; j < n; ++j) d[j] = w(j, n - 1);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = w(j, i - 1);
        w(j, i) = 0.0;
        w(i, j) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        w(i, j) = f;
        auto wj = w.row(j);
        g = e[j] + wj[j] * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += wj[k] * d[k];
          e[k] += wj[k] * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        auto wj = w.row(j);
        for (std::size_t k = j; k <= i - 1; ++k) wj[k] -= (f * e[k] + g * d[k]);
        d[j] = wj[i - 1];
        wj[i] = 0.0;
      }
    }
    d[i] = h;
  }

  if (!want_vectors) {
    for (std::size_t i = 0; i < n; ++i) d[i] = w(i, i);
    e[0] = 0.0;
    return;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    w(i, n - 1) = w(i, i);
    w(i, i) = 1.0;
    const double h = d[i + 1];
    auto wi1 = w.row(i + 1);
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = wi1[k] / h;
      for (std::size_t j = 0; j <= i; ++j) {
        auto wj = w.row(j);
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += wi1[k] * wj[k];
        for (std::size_t k = 0; k <= i; ++k) wj[k] -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) wi1[k] = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = w(j, n - 1);
    w(j, n - 1) = 0.0;
  }
  w(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL with Wilkinson-type shifts on (d, e) from tridiagonalize.
void ql_iterate(std::vector<double>& d, std::vector<double>& e, Matrix* w, int max_iterations) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iterations) {
          fail(ErrorCode::NoConvergence,
               "sym_eigen: QL did not converge for eigenvalue " + std::to_string(l));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (w != nullptr) {
            auto a = w->row(ii);
            auto b = w->row(ii + 1);
            for (std::size_t k = 0; k < n; ++k) {
              const double t = b[k];
              b[k] = s * a[k] + c * t;
              a[k] = c * a[k] - s * t;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

EigenDecomposition sym_eigen(const SymMatrix& s, const ToleranceProfile& tol) {
  const std::size_t n = s.order();
  Matrix w = s.dense();  // symmetric, so already "transposed"
  std::vector<double> d, e;
  tridiagonalize(w, d, e, true);
  ql_iterate(d, e, &w, tol.max_ql_iterations);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    auto src = w.row(order[j]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = src[k];
  }
  return out;
}

std::vector<double> sym_eigenvalues(const SymMatrix& s, const ToleranceProfile& tol) {
  Matrix w = s.dense();
  std::vector<double> d, e;
  tridiagonalize(w, d, e, false);
  ql_iterate(d, e, nullptr, tol.max_ql_iterations);
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

// L^{-1} a L^{-T}, symmetrized.
SymMatrix reduce_pencil(const SymMatrix& a, const Matrix& l) {
  Matrix x = a.dense();
  forward_substitute(l, x);
  x = x.transpose();
  forward_substitute(l, x);
  return SymMatrix(x);
}

void check_same_order(const SymMatrix& a, const SymMatrix& b) {
  require(a.order() == b.order(), "gen_sym_eigen: pencil orders differ");
}

}  // namespace

EigenDecomposition gen_sym_eigen(const SymMatrix& a, const SymMatrix& b,
                                 const ToleranceProfile& tol) {
  check_same_order(a, b);
  const Matrix l = cholesky(b, tol);
  EigenDecomposition eig = sym_eigen(reduce_pencil(a, l), tol);
  back_substitute_transpose(l, eig.vectors);
  return eig;
}

std::vector<double> gen_sym_eigenvalues(const SymMatrix& a, const SymMatrix& b,
                                        const ToleranceProfile& tol) {
  check_same_order(a, b);
  const Matrix l = cholesky(b, tol);
  return sym_eigenvalues(reduce_pencil(a, l), tol);
}

SymMatrix spd_sqrt(const SymMatrix& s, const ToleranceProfile& tol) {
  const std::size_t n = s.order();
  const EigenDecomposition eig = sym_eigen(s, tol);
  const double window = tol.psd_clamp * s.max_abs();
  std::vector<double> roots(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double v = eig.values[j];
    if (v < -window) {
      fail(ErrorCode::NotPositiveSemidefinite,
           "spd_sqrt: eigenvalue " + std::to_string(v) + " below clamping window");
    }
    roots[j] = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  Matrix scaled = eig.vectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= roots[j];
  return SymMatrix(scaled * eig.vectors.transpose());
}

SymMatrix spd_inverse(const SymMatrix& s, const ToleranceProfile& tol) {
  const Matrix l = cholesky(s, tol);
  Matrix x = Matrix::identity(s.order());
  forward_substitute(l, x);
  back_substitute_transpose(l, x);
  return SymMatrix(x);
}

std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag,
                        double lambda) {
  double off_scale = 1.0;
  for (double v : offdiag) off_scale = std::max(off_scale, v * v);
  const double pivmin = std::numeric_limits<double>::min() * off_scale;

  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    q = diag[i] - lambda - (i > 0 ? offdiag[i - 1] * offdiag[i - 1] / q : 0.0);
    // A zero pivot is nudged upward, so an exact eigenvalue is not counted.
    if (std::abs(q) < pivmin) q = pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiagonal_lowest(const Tridiagonal& t, std::size_t count) {
  const std::size_t n = t.order();
  require(count <= n, "tridiagonal_lowest: count exceeds order");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(t.offdiag[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double span = std::max(hi - lo, std::numeric_limits<double>::min());
  lo -= 1e-12 * span;
  hi += 1e-12 * span;

  std::vector<double> out;
  out.reserve(count);
  double floor = lo;
  for (std::size_t k = 1; k <= count; ++k) {
    // Smallest x with count_below(x) >= k.
    double a = floor;
    double b = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (sturm_count(t.diag, t.offdiag, mid) >= k) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out.push_back(0.5 * (a + b));
    floor = a;
  }
  return out;
}

Matrix solve(const Matrix& a, const Matrix& b) {
  require(a.rows() == a.cols(), "solve: matrix must be square");
  require(b.rows() == a.rows(), "solve: right-hand side shape mismatch");
  const std::size_t n = a.rows();
  Matrix lu = a;
  Matrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (lu(p, k) == 0.0) fail(ErrorCode::SingularDecomposition, "solve: singular matrix");
    if (p != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
      std::swap_ranges(x.row(k).begin(), x.row(k).end(), x.row(p).begin());
    }
    const double inv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) * inv;
      if (f == 0.0) continue;
      lu(i, k) = f;
      auto li = lu.row(i);
      auto lk = lu.row(k);
      for (std::size_t j = k + 1; j < n; ++j) li[j] -= f * lk[j];
      auto xi = x.row(i);
      auto xk = x.row(k);
      for (std::size_t j = 0; j < x.cols(); ++j) xi[j] -= f * xk[j];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    auto xi = x.row(ii);
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double u = lu(ii, k);
      auto xk = x.row(k);
      for (std::size_t j = 0; j < x.cols(); ++j) xi[j] -= u * xk[j];
    }
    const double inv = 1.0 / lu(ii, ii);
    for (double& v : xi) v *= inv;
  }
  return x;
}

namespace {

// Removes from v its components along the first `count` columns of q.
void project_out(const Matrix& q, std::size_t count, std::vector<double>& v) {
  for (std::size_t j = 0; j < count; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < q.rows(); ++i) c += q(i, j) * v[i];
    for (std::size_t i = 0; i < q.rows(); ++i) v[i] -= c * q(i, j);
  }
}

}  // namespace

Matrix orthonormalize(const Matrix& m, const ToleranceProfile& tol) {
  const std::size_t n = m.rows();
  const std::size_t d = m.cols();
  if (d > n) fail(ErrorCode::RankDeficientBasis, "orthonormalize: more columns than rows");
  double largest = 0.0;
  for (std::size_t j = 0; j < d; ++j) largest = std::max(largest, norm2(m.column(j)));
  const double threshold = static_cast<double>(n) * tol.rank * largest;

  Matrix q(n, d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> v = m.column(j);
    project_out(q, j, v);
    project_out(q, j, v);
    const double len = norm2(v);
    if (!(len > threshold)) {
      fail(ErrorCode::RankDeficientBasis,
           "orthonormalize: column " + std::to_string(j) + " is numerically dependent");
    }
    for (double& x : v) x /= len;
    q.set_column(j, v);
  }
  return q;
}

Matrix orthogonal_complement(const Matrix& q) {
  const std::size_t n = q.rows();
  const std::size_t d = q.cols();
  require(d <= n, "orthogonal_complement: too many columns");
  // Householder QR of q; the trailing n - d columns of the full orthogonal
  // factor span the complement.
  Matrix r = q.transpose();  // row k holds column k of q
  std::vector<std::vector<double>> reflectors;
  reflectors.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::span<double> x = r.row(k);
    double alpha = 0.0;
    for (std::size_t i = k; i < n; ++i) alpha += x[i] * x[i];
    alpha = std::sqrt(alpha);
    if (x[k] > 0) alpha = -alpha;
    std::vector<double> v(n, 0.0);
    for (std::size_t i = k; i < n; ++i) v[i] = x[i];
    v[k] -= alpha;
    const double vv = dot(v, v);
    if (vv > 0.0) {
      for (std::size_t j = k; j < d; ++j) {
        std::span<double> y = r.row(j);
        const double s = 2.0 * dot(v, y) / vv;
        for (std::size_t i = k; i < n; ++i) y[i] -= s * v[i];
      }
      for (double& e : v) e /= std::sqrt(vv);
    }
    reflectors.push_back(std::move(v));
  }
  Matrix basis(n - d, n);  // row c holds complement column c
  for (std::size_t c = 0; c < n - d; ++c) {
    std::span<double> e = basis.row(c);
    e[d + c] = 1.0;
    for (std::size_t k = d; k-- > 0;) {
      const std::vector<double>& v = reflectors[k];
      const double s = 2.0 * dot(v, e);
      if (s != 0.0)
        for (std::size_t i = k; i < n; ++i) e[i] -= s * v[i];
    }
    for (double x : e) {
      if (std::abs(x) > 1e-12) {
        if (x < 0)
          for (double& y : e) y = -y;
        break;
      }
    }
  }
  return basis.transpose();
}

std::vector<double> singular_values(const Matrix& m) {
  // Work on columns of the taller orientation.
  Matrix a = m.rows() >= m.cols() ? m : m.transpose();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Matrix at = a.transpose();  // row j = column j of a
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        auto cp = at.row(p);
        auto cq = at.row(q);
        const double alpha = dot(cp, cp);
        const double beta = dot(cq, cq);
        const double gamma = dot(cp, cq);
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double x = cp[i];
          const double y = cq[i];
          cp[i] = c * x - s * y;
          cq[i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(cols);
  for (std::size_t j = 0; j < cols; ++j) sv[j] = norm2(at.row(j));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double spectral_norm(const SymMatrix& s) {
  const auto v = sym_eigenvalues(s);
  return std::max(std::abs(v.front()), std::abs(v.back()));
}

}  // namespace krein
