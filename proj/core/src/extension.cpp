#include "krein/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "krein/error.hpp"
#include "krein/random.hpp"

namespace krein {

namespace {

double min_eigenvalue(const SymMatrix& s, const ToleranceProfile& tol) {
  return sym_eigenvalues(s, tol).front();
}

double positive_definite_floor(const SymMatrix& a, const ToleranceProfile& tol) {
  const double eps = min_eigenvalue(a, tol);
  if (!(eps > tol.cholesky_pivot * static_cast<double>(a.order()) * a.max_abs())) {
    fail(ErrorCode::NotPositiveDefinite,
         "operator is not positive definite (smallest eigenvalue " + std::to_string(eps) + ")");
  }
  return eps;
}

Matrix times(const SymMatrix& a, const Matrix& b) { return a.dense() * b; }

double max_abs_diff(const Matrix& x, const Matrix& y) { return max_abs(x - y); }

}  // namespace

ExtensionModel new_model(const SymMatrix& a, const Matrix& raw_basis,
                         const ToleranceProfile& tol) {
  const std::size_t n = a.order();
  if (n == 0) fail(ErrorCode::InvalidArgument, "new_model: empty operator");
  if (raw_basis.rows() != n) fail(ErrorCode::InvalidArgument, "new_model: basis row count");
  if (raw_basis.cols() == 0) fail(ErrorCode::RankDeficientBasis, "new_model: empty basis");
  if (raw_basis.cols() >= n)
    fail(ErrorCode::NoDeficiency, "new_model: domain must be a proper subspace");
  const double eps = positive_definite_floor(a, tol);
  Matrix q = orthonormalize(raw_basis, tol);
  return ExtensionModel(a, std::move(q), eps);
}

ExtensionModel random_model(std::uint64_t seed, std::size_t n, std::size_t d,
                            const ToleranceProfile& tol) {
  SplitMix64 rng(seed);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  Matrix a = m.transpose() * m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.1;
  Matrix raw(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) raw(i, j) = rng.uniform(-1.0, 1.0);
  return new_model(SymMatrix(a), raw, tol);
}

ExtensionResult friedrichs(const ExtensionModel& model) {
  return {model.a(), ExtensionKind::Friedrichs, Matrix(model.ambient_dim(), 0), 0.0};
}

Matrix adjoint_kernel(const ExtensionModel& model) {
  return orthogonal_complement(orthonormalize(times(model.a(), model.domain_basis())));
}

ExtensionResult krein_extension(const ExtensionModel& model, const ToleranceProfile& tol) {
  const std::size_t n = model.ambient_dim();
  const Matrix& q = model.domain_basis();
  const Matrix aq = times(model.a(), q);
  const Matrix kernel = adjoint_kernel(model);
  const double scale = model.a().max_abs();

  // S_K [Q K] = [AQ 0], solved in transposed form.
  const Matrix x = hstack(q, kernel);
  const Matrix y = hstack(aq, Matrix(n, kernel.cols()));
  const SymMatrix piecewise(solve(x.transpose(), y.transpose()));
  if (piecewise.asymmetry() > tol.symmetry * scale) {
    fail(ErrorCode::ConstructionMismatch,
         "krein: piecewise construction is not symmetric (" +
             std::to_string(piecewise.asymmetry()) + ")");
  }

  const SymMatrix root = spd_sqrt(model.a(), tol);
  const Matrix z = orthonormalize(times(root, q), tol);
  const Matrix rz = times(root, z);
  const SymMatrix ando_nishio(rz * rz.transpose());

  const double mismatch = max_abs_diff(piecewise, ando_nishio);
  if (mismatch > tol.krein_mismatch * scale) {
    fail(ErrorCode::ConstructionMismatch,
         "krein: constructions differ by " + std::to_string(mismatch));
  }
  return {piecewise, ExtensionKind::Krein, kernel, mismatch};
}

ExtensionResult parametrized_extension(const ExtensionModel& model, const Matrix& w_basis,
                                       const Matrix& b, const ToleranceProfile& tol) {
  const std::size_t n = model.ambient_dim();
  const std::size_t w = w_basis.cols();
  const double scale = model.a().max_abs();
  if (w_basis.rows() != n) fail(ErrorCode::InvalidArgument, "parametrized: W row count");
  if (b.rows() != w || b.cols() != w) fail(ErrorCode::InvalidArgument, "parametrized: B shape");

  const Matrix& q = model.domain_basis();
  const Matrix aq = times(model.a(), q);
  const Matrix kernel = adjoint_kernel(model);

  Matrix ker_b(w, 0);
  SymMatrix bs;
  if (w > 0) {
    if (max_abs_diff(w_basis.transpose() * w_basis, Matrix::identity(w)) > tol.orthonormality)
      fail(ErrorCode::NotOrthogonal, "parametrized: W columns are not orthonormal");
    // W must sit inside ker(S*) = (AD)^perp.
    if (max_abs(w_basis.transpose() * aq) > tol.orthonormality * std::max(1.0, scale))
      fail(ErrorCode::InvalidArgument, "parametrized: W is not inside the adjoint kernel");
    bs = SymMatrix(b);
    if (bs.asymmetry() > tol.symmetry * std::max(1.0, bs.max_abs()))
      fail(ErrorCode::InvalidArgument, "parametrized: B is not symmetric");
    const EigenDecomposition eb = sym_eigen(bs, tol);
    const double window = tol.psd_clamp * std::max(1.0, bs.max_abs());
    if (eb.values.front() < -window)
      fail(ErrorCode::NotPositiveSemidefinite, "parametrized: B has a negative eigenvalue");
    std::size_t nullity = 0;
    while (nullity < w && eb.values[nullity] <= window) ++nullity;
    ker_b = eb.vectors.columns(0, nullity);
  }

  // Z: complement of W inside ker(S*).
  Matrix z = kernel;
  if (w > 0) z = kernel * orthogonal_complement(kernel.transpose() * w_basis);

  const SymMatrix a_inv = spd_inverse(model.a(), tol);
  Matrix x = q;
  Matrix y = aq;
  if (w > 0) {
    const Matrix wb = w_basis * bs.dense();
    x = hstack(x, times(a_inv, wb) + w_basis);
    y = hstack(y, wb);
  }
  if (z.cols() > 0) {
    x = hstack(x, times(a_inv, z));
    y = hstack(y, z);
  }

  const std::vector<double> sv = singular_values(x);
  if (!(sv.back() >= static_cast<double>(n) * tol.rank * sv.front())) {
    fail(ErrorCode::SingularDecomposition,
         "parametrized: domain decomposition is numerically singular");
  }

  const SymMatrix m(solve(x.transpose(), y.transpose()));
  if (m.asymmetry() > tol.symmetry * std::max(1.0, scale))
    fail(ErrorCode::ConstructionMismatch, "parametrized: result is not symmetric");
  if (min_eigenvalue(m, tol) < -tol.extension_residual * std::max(1.0, scale))
    fail(ErrorCode::NotPositiveSemidefinite, "parametrized: result is not nonnegative");

  Matrix kernel_basis = w > 0 ? w_basis * ker_b : Matrix(n, 0);
  if (kernel_basis.cols() > 0 &&
      max_abs(times(m, kernel_basis)) > tol.extension_residual * std::max(1.0, scale))
    fail(ErrorCode::ConstructionMismatch, "parametrized: W ker(B) is not annihilated");
  return {m, ExtensionKind::Parametrized, std::move(kernel_basis), 0.0};
}

ReducedKrein reduced_krein(const ExtensionModel& model, const ToleranceProfile& tol) {
  const ExtensionResult sk = krein_extension(model, tol);
  Matrix basis = orthonormalize(times(model.a(), model.domain_basis()), tol);
  const Matrix bt = basis.transpose();
  SymMatrix reduced(bt * sk.matrix.dense() * basis);
  const SymMatrix reduced_inv = spd_inverse(reduced, tol);
  const SymMatrix a_inv = spd_inverse(model.a(), tol);
  const double residual = max_abs_diff(reduced_inv, bt * a_inv.dense() * basis);
  return {std::move(basis), std::move(reduced), residual};
}

namespace {

struct Grams {
  SymMatrix ga;  // Q^T A^2 Q
  SymMatrix gb;  // Q^T A Q
  Matrix aq;
};

Grams grams(const ExtensionModel& model) {
  const Matrix aq = times(model.a(), model.domain_basis());
  return {SymMatrix(aq.transpose() * aq), SymMatrix(model.domain_basis().transpose() * aq), aq};
}

}  // namespace

std::vector<double> buckling_pencil_values(const ExtensionModel& model,
                                           const ToleranceProfile& tol) {
  // G_a u = lambda G_b u is solved as G_b u = mu G_a u with mu = 1/lambda:
  // G_a carries the larger condition number only as a square, and factoring
  // it keeps the small pencil values accurate.
  const Grams g = grams(model);
  std::vector<double> mu = gen_sym_eigenvalues(g.gb, g.ga, tol);
  std::vector<double> values(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (!(mu[j] > 0.0))
      fail(ErrorCode::NotPositiveDefinite, "buckling: nonpositive pencil value");
    values[mu.size() - 1 - j] = 1.0 / mu[j];
  }
  return values;
}

BucklingReport buckling_analysis(const ExtensionModel& model, const ToleranceProfile& tol) {
  const std::size_t d = model.domain_dim();
  const Grams g = grams(model);
  const EigenDecomposition eig = gen_sym_eigen(g.gb, g.ga, tol);

  BucklingReport report;
  report.pencil_values.resize(d);
  report.pencil_vectors = Matrix(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const double mu = eig.values[j];
    if (!(mu > 0.0)) fail(ErrorCode::NotPositiveDefinite, "buckling: nonpositive pencil value");
    const std::size_t k = d - 1 - j;
    report.pencil_values[k] = 1.0 / mu;
    for (std::size_t i = 0; i < d; ++i) report.pencil_vectors(i, k) = eig.vectors(i, j);
  }

  report.polar_modulus = spd_sqrt(g.ga, tol);
  const SymMatrix modulus_inv = spd_inverse(report.polar_modulus, tol);
  report.t_matrix = SymMatrix(modulus_inv.dense() * g.gb.dense() * modulus_inv.dense());
  report.isometry = g.aq * modulus_inv.dense();

  const Matrix& u = report.isometry;
  report.residuals["isometry"] = max_abs_diff(u.transpose() * u, Matrix::identity(d));

  // Nonzero spectrum of S_K against the pencil.
  const ExtensionResult sk = krein_extension(model, tol);
  const std::vector<double> sk_values = sym_eigenvalues(sk.matrix, tol);
  const std::size_t offset = sk_values.size() - d;
  double krein_vs_pencil = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double p = report.pencil_values[j];
    krein_vs_pencil = std::max(krein_vs_pencil, std::abs(sk_values[offset + j] - p) / p);
  }
  report.residuals["krein_vs_pencil"] = krein_vs_pencil;

  // Inverse of the reduced Krein extension, written on R^N, against U T U^T.
  const ReducedKrein reduced = reduced_krein(model, tol);
  const Matrix lifted =
      reduced.basis * spd_inverse(reduced.matrix, tol).dense() * reduced.basis.transpose();
  const Matrix conjugated = u * report.t_matrix.dense() * u.transpose();
  report.residuals["unitary_equivalence"] =
      max_abs_diff(lifted, conjugated) / std::max(1.0, max_abs(conjugated));
  report.residuals["skinv"] = reduced.skinv_residual;

  // Spectrum of T is the reciprocal pencil spectrum.
  const std::vector<double> t_values = sym_eigenvalues(report.t_matrix, tol);
  double t_vs_reciprocal = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double r = 1.0 / report.pencil_values[d - 1 - j];
    t_vs_reciprocal = std::max(t_vs_reciprocal, std::abs(t_values[j] - r) / r);
  }
  report.residuals["t_vs_reciprocal"] = t_vs_reciprocal;
  return report;
}

ExtensionModel direct_sum(const ExtensionModel& m1, const ExtensionModel& m2,
                          const ToleranceProfile& tol) {
  (void)tol;
  return ExtensionModel(SymMatrix(block_diagonal(m1.a(), m2.a())),
                        block_diagonal(m1.domain_basis(), m2.domain_basis()),
                        std::min(m1.epsilon(), m2.epsilon()));
}

ExtensionModel conjugate_by_unitary(const ExtensionModel& model, const Matrix& u,
                                    const ToleranceProfile& tol) {
  const std::size_t n = model.ambient_dim();
  if (u.rows() != n || u.cols() != n)
    fail(ErrorCode::InvalidArgument, "conjugate_by_unitary: shape mismatch");
  if (max_abs_diff(u.transpose() * u, Matrix::identity(n)) > tol.orthonormality)
    fail(ErrorCode::NotOrthogonal, "conjugate_by_unitary: matrix is not orthogonal");
  SymMatrix a(u * model.a().dense() * u.transpose());
  const double eps = positive_definite_floor(a, tol);
  return ExtensionModel(std::move(a), u * model.domain_basis(), eps);
}

double order_compare(const SymMatrix& e1, const SymMatrix& e2, double a) {
  if (e1.order() != e2.order()) fail(ErrorCode::InvalidArgument, "order_compare: orders differ");
  if (!(a > 0.0)) fail(ErrorCode::DomainError, "order_compare: shift must be positive");
  const SymMatrix shift = SymMatrix::diagonal(std::vector<double>(e1.order(), a));
  const SymMatrix r1 = spd_inverse(SymMatrix(e1.dense() + shift.dense()));
  const SymMatrix r2 = spd_inverse(SymMatrix(e2.dense() + shift.dense()));
  return sym_eigenvalues(SymMatrix(r1.dense() - r2.dense())).front();
}

double order_compare(const ExtensionResult& e1, const ExtensionResult& e2, double a) {
  return order_compare(e1.matrix, e2.matrix, a);
}

}  // namespace krein
