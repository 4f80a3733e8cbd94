#pragma once

// Counting functions, Weyl coefficients, and checks of the eigenvalue
// inequalities relating Krein and Dirichlet spectra.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krein/exact_spectra.hpp"

namespace krein {

// N(lambda) = #{j : lambda_j <= lambda}, right-continuous.
class CountingFunction {
 public:
  CountingFunction() = default;
  // Breakpoints (lambda, cumulative count): lambda strictly increasing,
  // counts strictly increasing. Throws InvalidArgument otherwise.
  CountingFunction(std::vector<std::pair<double, std::uint64_t>> breakpoints, double complete_below,
                   std::string source = {});

  std::uint64_t operator()(double lambda) const;
  const std::vector<std::pair<double, std::uint64_t>>& breakpoints() const noexcept { return points_; }
  double complete_below() const noexcept { return complete_below_; }
  const std::string& source() const noexcept { return source_; }

 private:
  std::vector<std::pair<double, std::uint64_t>> points_;
  double complete_below_ = 0.0;
  std::string source_;
};

CountingFunction counting_from_spectrum(const Spectrum& s, std::string source = {});

struct InequalityReport {
  std::string name;
  bool satisfied = true;
  // A strict inequality that holds only as a tie within 1e-12.
  bool inconclusive = false;
  // Smallest slack; negative iff violated.
  double margin = 0.0;
  std::vector<std::size_t> witnesses;
};

// N_K <= N_D at every point of the grid and at every breakpoint of either
// function, also nudged by +-1e-9 relative. Witnesses index the sorted list
// of evaluation points.
InequalityReport counting_domination(const CountingFunction& n_k, const CountingFunction& n_d,
                                     const std::vector<double>& lambda_grid);

// Volume of the unit ball in R^n.
double unit_ball_volume(unsigned n);

// (2 pi)^{-n} v_n |Omega|.
double weyl_leading(unsigned n, double volume);

struct KozlovCoefficient {
  double value = 0.0;                // closed form
  std::optional<double> quadrature;  // sphere integral by Gauss-Legendre, n <= 4
  double self_check = 0.0;           // |quadrature - value| / value, 0 when not computed
};

// Leading coefficient for the pencil |xi|^{2m} vs |xi|^{2r} (m > r >= 0):
// (n (2 pi)^n)^{-1} |Omega| times the integral over S^{n-1} of
// (b0 / a0)^{n / (2(m - r))}, which is the sphere area for isotropic symbols.
KozlovCoefficient kozlov_coefficient(unsigned n, unsigned m, unsigned r, double volume);

struct WeylCoefficients {
  double lead = 0.0;
  double second = 0.0;
};

// N(lambda) ~ lead lambda^{n/2} + second lambda^{(n-1)/2} on B_n(0; R).
// Dirichlet: second = -(2 pi)^{1-n} v_{n-1} (n/4) v_n R^{n-1}.
// Krein: second = -(2 pi)^{1-n} v_{n-1} [(n/4) v_n + v_{n-1}] R^{n-1}.
WeylCoefficients two_term_ball_coefficients(unsigned n, double radius, Realization which);

struct WeylFit {
  unsigned n = 0;
  double c_lead = 0.0;
  double c_second = 0.0;
  // Coefficient of lambda^{(n-2)/2}, the order of the two-term remainder.
  double c_third = 0.0;
  double analytic_lead = 0.0;
  double analytic_second = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t samples = 0;
  // sup over samples of |N - fitted law|.
  double residual_sup = 0.0;
  // log-log slope of binned maxima of |N - analytic two-term| on the upper
  // half of the window (in log scale).
  double remainder_slope = 0.0;
};

// Least squares of N against {lambda^{n/2}, lambda^{(n-1)/2}, lambda^{(n-2)/2}}
// on 2000 log-uniform samples. Throws InsufficientData if the window is empty,
// not inside the complete range of N, or holds fewer than two eigenvalues.
WeylFit weyl_fit(const CountingFunction& counting, unsigned n, double lo, double hi,
                 const WeylCoefficients& analytic);

// Both bounds of N_D(B_n) - N_K(B_n) at every breakpoint below lambda_max:
//   N_D(B_n) <= N_K(B_n) + N_D(B_{n-1})   ("sandwich upper")
//   N_D(B_n) >= N_K(B_n) + N_K(B_{n-1})   ("sandwich lower")
// B_1(0; R) is the interval (-R, R).
std::vector<InequalityReport> sandwich_check(unsigned n, double radius, double lambda_max);

// Reports, in order: "ratio bound" (lambda_2 / lambda_1 against
// (n^2 + 8n + 20) / (n + 2)^2), "sum bound" (strict), "Yang bound" for
// k = 1..k_max, "Dirichlet lower bound" (strict), "Dirichlet second below
// Krein first", "Payne ratio" (1 <= lambda_K1 / lambda_D1 <= 4),
// "index domination" for j <= k_max. All on nonzero eigenvalues expanded by
// multiplicity. Throws InsufficientEigenvalues when the spectra are too short.
std::vector<InequalityReport> universal_inequalities(const Spectrum& krein, const Spectrum& dirichlet,
                                                     unsigned n, double volume, std::size_t k_max);

}  // namespace krein
