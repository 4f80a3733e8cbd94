#pragma once

#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "krein/error.hpp"
#include "krein/linalg.hpp"
#include "krein/random.hpp"

namespace krein::testing {

// Code of the krein::Error thrown by fn; fails the test if nothing is thrown.
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected krein::Error");
  return ErrorCode::InvalidArgument;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

inline Matrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

inline SymMatrix random_symmetric(SplitMix64& rng, std::size_t n) {
  return SymMatrix(random_matrix(rng, n, n));
}

// M^T M + shift I.
inline SymMatrix random_spd(SplitMix64& rng, std::size_t n, double shift = 0.1) {
  const Matrix m = random_matrix(rng, n, n);
  Matrix s = m.transpose() * m;
  for (std::size_t i = 0; i < n; ++i) s(i, i) += shift;
  return SymMatrix(s);
}

// Rank-r PSD matrix G^T G with G r x n.
inline SymMatrix random_psd(SplitMix64& rng, std::size_t n, std::size_t r) {
  const Matrix g = random_matrix(rng, r, n);
  return SymMatrix(g.transpose() * g);
}

// Householder reflector I - 2 v v^T / v^T v.
inline Matrix random_householder(SplitMix64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  const double vv = dot(v, v);
  Matrix h = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2.0 * v[i] * v[j] / vv;
  return h;
}

}  // namespace krein::testing
