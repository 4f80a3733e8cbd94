#pragma once

// Finite-dimensional model of nonnegative self-adjoint extensions.
//
// A model is a positive definite A on R^N together with a proper subspace D
// (orthonormal basis Q, N x d). The "minimal operator" is S = A restricted to
// D, and ran(S)^perp = (A D)^perp plays the role of ker(S*).
//
// Friedrichs extension. The Friedrichs domain decomposes as
// D + S_F^{-1} ker(S*). With S_F = A that is D + A^{-1}(AD)^perp, whose
// dimension is d + (N - d) = N, and the sum is direct because
// A^{-1}(AD)^perp is A-orthogonal to D. So the decomposition already spans
// R^N and S_F is A itself.
//
// Krein extension. S_K equals A on D and vanishes on (AD)^perp. It is built
// twice: literally from the direct sum D + (AD)^perp, and as
// A^{1/2} P A^{1/2} with P the orthogonal projector onto A^{1/2} D. The two
// must agree to rounding.
//
// In finite dimensions every extension domain is all of R^N, so statements
// about relative primeness of domains carry no content here and are not
// checked.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "krein/linalg.hpp"
#include "krein/tolerance.hpp"

namespace krein {

class ExtensionModel {
 public:
  std::size_t ambient_dim() const noexcept { return a_.order(); }
  std::size_t domain_dim() const noexcept { return q_.cols(); }
  std::size_t deficiency() const noexcept { return ambient_dim() - domain_dim(); }

  const SymMatrix& a() const noexcept { return a_; }
  const Matrix& domain_basis() const noexcept { return q_; }
  // Smallest eigenvalue of A.
  double epsilon() const noexcept { return epsilon_; }

 private:
  ExtensionModel(SymMatrix a, Matrix q, double epsilon)
      : a_(std::move(a)), q_(std::move(q)), epsilon_(epsilon) {}

  friend ExtensionModel new_model(const SymMatrix&, const Matrix&, const ToleranceProfile&);
  friend ExtensionModel direct_sum(const ExtensionModel&, const ExtensionModel&,
                                   const ToleranceProfile&);
  friend ExtensionModel conjugate_by_unitary(const ExtensionModel&, const Matrix&,
                                             const ToleranceProfile&);

  SymMatrix a_;
  Matrix q_;
  double epsilon_;
};

// Orthonormalizes raw_basis (two Gram-Schmidt passes) and checks A > 0.
ExtensionModel new_model(const SymMatrix& a, const Matrix& raw_basis,
                         const ToleranceProfile& tol = {});

// A = M^T M + 0.1 I and a uniform raw basis, both drawn from SplitMix64(seed).
ExtensionModel random_model(std::uint64_t seed, std::size_t n, std::size_t d,
                            const ToleranceProfile& tol = {});

enum class ExtensionKind { Friedrichs, Krein, Parametrized };

struct ExtensionResult {
  SymMatrix matrix;
  ExtensionKind kind = ExtensionKind::Friedrichs;
  Matrix kernel_basis;               // orthonormal columns, possibly none
  double construction_mismatch = 0;  // Krein only: |piecewise - Ando-Nishio|_max
};

ExtensionResult friedrichs(const ExtensionModel& model);

// Orthonormal basis of (A D)^perp, N x (N - d).
Matrix adjoint_kernel(const ExtensionModel& model);

ExtensionResult krein_extension(const ExtensionModel& model, const ToleranceProfile& tol = {});

// The extension S_{B,W}: W has orthonormal columns inside (A D)^perp (it may
// have zero columns) and b is a symmetric PSD matrix acting on W-coordinates.
ExtensionResult parametrized_extension(const ExtensionModel& model, const Matrix& w_basis,
                                       const Matrix& b, const ToleranceProfile& tol = {});

struct ReducedKrein {
  Matrix basis;           // N x d, orthonormal, spans (ker S_K)^perp
  SymMatrix matrix;       // compression of S_K to that subspace
  double skinv_residual;  // |inverse - compression of A^{-1}|_max
};

ReducedKrein reduced_krein(const ExtensionModel& model, const ToleranceProfile& tol = {});

struct BucklingReport {
  // Eigenvalues of Q^T A^2 Q u = lambda Q^T A Q u, ascending.
  std::vector<double> pencil_values;
  // Column j pairs with pencil_values[j]; normalized in the Q^T A^2 Q metric.
  Matrix pencil_vectors;
  SymMatrix t_matrix;       // G_a^{-1/2} G_b G_a^{-1/2}
  SymMatrix polar_modulus;  // |S| = G_a^{1/2}
  Matrix isometry;          // U_S = A Q |S|^{-1}
  std::map<std::string, double> residuals;
};

BucklingReport buckling_analysis(const ExtensionModel& model, const ToleranceProfile& tol = {});

// Only the pencil eigenvalues, ascending; skips the report's extra factorizations.
std::vector<double> buckling_pencil_values(const ExtensionModel& model,
                                           const ToleranceProfile& tol = {});

ExtensionModel direct_sum(const ExtensionModel& m1, const ExtensionModel& m2,
                          const ToleranceProfile& tol = {});

// A -> U A U^T, Q -> U Q.
ExtensionModel conjugate_by_unitary(const ExtensionModel& model, const Matrix& u,
                                    const ToleranceProfile& tol = {});

// Smallest eigenvalue of (e1 + a I)^{-1} - (e2 + a I)^{-1}. A value >= -tol
// certifies e1 <= e2 in the operator order.
double order_compare(const SymMatrix& e1, const SymMatrix& e2, double a);
double order_compare(const ExtensionResult& e1, const ExtensionResult& e2, double a);

}  // namespace krein
