#pragma once

// Closed-form spectra of -d^2/dx^2 on an interval and of -Delta on a ball,
// with Dirichlet and Krein boundary conditions.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace krein {

struct IntervalSpec {
  double a = 0.0;
  double b = 1.0;

  double length() const noexcept { return b - a; }
};

struct BallSpec {
  unsigned n = 2;
  double radius = 1.0;
};

enum class Realization { Dirichlet, Krein };

class KernelDimension {
 public:
  static constexpr KernelDimension finite(std::size_t d) { return KernelDimension(false, d); }
  static constexpr KernelDimension infinite() { return KernelDimension(true, 0); }

  bool is_infinite() const noexcept { return infinite_; }
  // Meaningless when infinite.
  std::size_t value() const noexcept { return value_; }

  friend constexpr bool operator==(KernelDimension, KernelDimension) = default;

 private:
  constexpr KernelDimension(bool inf, std::size_t v) : infinite_(inf), value_(v) {}
  bool infinite_;
  std::size_t value_;
};

struct SpectrumEntry {
  double value;
  std::uint64_t multiplicity;
};

// Nonzero eigenvalues, strictly increasing. Every eigenvalue <= complete_below
// is listed.
struct Spectrum {
  std::vector<SpectrumEntry> entries;
  KernelDimension kernel = KernelDimension::finite(0);
  double complete_below = 0.0;

  // Total multiplicity.
  std::uint64_t count() const;
  // Eigenvalues repeated by multiplicity, ascending.
  std::vector<double> expanded() const;
};

// (j pi / L)^2, j = 1..count.
Spectrum interval_dirichlet(const IntervalSpec& spec, std::size_t count);

// First `count` nonzero Krein eigenvalues: (2 m pi / L)^2 from even
// eigenfunctions cos(k(x - c)) and (2 t_m / L)^2 from odd ones sin(k(x - c)),
// c the midpoint and t_m the roots of tan t = t. The kernel {1, x} has
// dimension 2.
Spectrum interval_krein(const IntervalSpec& spec, std::size_t count);

// All eigenvalues <= lambda_max.
Spectrum interval_spectrum(const IntervalSpec& spec, Realization which, double lambda_max);

enum class IntervalBranch { Even, Odd };

// Wave number k of the m-th eigenfunction on the given branch.
double interval_krein_wavenumber(const IntervalSpec& spec, IntervalBranch branch, std::size_t m);

// max(|v'(a) - D|, |v'(b) - D|) with D = (v(b) - v(a)) / L.
double interval_bc_residual(const IntervalSpec& spec, double v_a, double v_b, double dv_a,
                            double dv_b);
double interval_krein_bc_residual(const IntervalSpec& spec, IntervalBranch branch, std::size_t m);

// Dimension of the spherical harmonics of degree l on S^{n-1}. Throws
// Overflow above 2^63 - 1.
std::uint64_t ball_multiplicity(unsigned n, unsigned l);

// Bessel order (doubled) of channel l: l + (n-2)/2 for Dirichlet, l + n/2
// for Krein.
unsigned channel_twice_order(unsigned n, unsigned l, Realization which);

// All eigenvalues <= lambda_max, aggregated over channels. Values from
// different channels within 1e-11 relative are merged.
Spectrum ball_spectrum(const BallSpec& spec, Realization which, double lambda_max);

struct InterlaceReport {
  bool satisfied = true;
  std::size_t checked = 0;
  double min_relative_gap = 0.0;
};

// j_{nu,k}^2 < j_{nu+1,k}^2 < j_{nu,k+1}^2 for k <= k_max, nu = l + (n-2)/2:
// the Krein channel sits between consecutive Dirichlet values.
InterlaceReport channel_interlace_report(const BallSpec& spec, unsigned l, std::size_t k_max);

}  // namespace krein
