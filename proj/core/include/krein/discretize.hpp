#pragma once

// Finite-difference models: the interval operator -u'' + V u restricted to
// clamped grid functions, and the radial channel operators of the ball with
// Dirichlet or Krein boundary rows.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <span>
#include <vector>

#include "krein/exact_spectra.hpp"
#include "krein/extension.hpp"
#include "krein/linalg.hpp"

namespace krein {

// Interior nodes x_i = a + i h, i = 1..m, h = (b - a) / (m + 1).
struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  std::size_t m = 8;

  double h() const noexcept { return (b - a) / static_cast<double>(m + 1); }
  double node(std::size_t i) const noexcept { return a + static_cast<double>(i) * h(); }
};

// Throws InvalidArgument unless m >= 8 and a < b.
Grid1D make_grid(double a, double b, std::size_t m);

class PotentialSpec {
 public:
  enum class Kind { Zero, Constant, Sampled };

  static PotentialSpec zero() { return PotentialSpec(Kind::Zero, 0.0, {}); }
  // c >= 0.
  static PotentialSpec constant(double c);
  // One value per interior node, all finite and >= 0.
  static PotentialSpec sampled(std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  // V at the interior nodes of the grid.
  std::vector<double> values(const Grid1D& grid) const;

 private:
  PotentialSpec(Kind k, double c, std::vector<double> v)
      : kind_(k), constant_(c), samples_(std::move(v)) {}
  Kind kind_;
  double constant_;
  std::vector<double> samples_;
};

// One value per line; blank lines are skipped. ParseError messages carry the
// 1-based line number.
PotentialSpec read_potential_csv(std::istream& in, std::size_t expected_count);
PotentialSpec read_potential_csv(const std::filesystem::path& path, std::size_t expected_count);

// A = tridiag(-1, 2, -1) / h^2 + diag(V), D = span{e_2, ..., e_{m-1}}: grid
// functions vanishing at the two outermost interior nodes, a discrete version
// of u = u' = 0 at both ends.
ExtensionModel interval_model(const Grid1D& grid, const PotentialSpec& v);

// The `count` smallest buckling pencil values; kernel dimension = codim D.
Spectrum discrete_krein_spectrum(const ExtensionModel& model, std::size_t count);

struct RadialChannelSpec {
  unsigned n = 3;
  unsigned l = 0;
  double radius = 1.0;
  std::size_t m = 200;
  Realization bc = Realization::Dirichlet;

  // l(l + n - 2) + (n - 1)(n - 3) / 4, the 1/r^2 coefficient after removing
  // the r^{(n-1)/2} weight.
  double coefficient() const noexcept;
};

// Generalized pencil K f = lambda M f with K symmetric tridiagonal and M
// diagonal. Dirichlet: h = R/(m+1), M = I. Krein: h = R/m with a node at
// r = R whose row comes from a centered ghost point for
// f'(R) = (l + (n-1)/2) f(R) / R, halved to keep K symmetric, so M_mm = 1/2.
struct RadialPencil {
  Tridiagonal stiffness;
  std::vector<double> mass;
  std::vector<double> nodes;
};

// Throws UnsupportedChannel for n = 2, l = 0.
RadialPencil radial_pencil(const RadialChannelSpec& spec);

// The `count` smallest eigenvalues of the pencil, including any near-zero one.
std::vector<double> pencil_lowest(const RadialPencil& pencil, std::size_t count);

// First `count` nonzero channel eigenvalues. For Krein, the lowest pencil
// eigenvalue approximates the kernel function r^{l + (n-1)/2} and is
// dropped; the spectrum reports kernel dimension 1.
Spectrum radial_spectrum(const RadialChannelSpec& spec, std::size_t count);

struct ConvergenceResult {
  std::vector<std::size_t> sizes;
  std::vector<double> values;
  std::vector<double> errors;
  double order = 0.0;         // least-squares slope of log|error| against log(1/m)
  double extrapolated = 0.0;  // Richardson value from the two finest sizes
};

// sizes: at least three, each twice the previous. Throws NonMonotoneError if
// the errors do not strictly decrease.
ConvergenceResult convergence_order(const std::function<double(std::size_t)>& run,
                                    std::span<const std::size_t> sizes, double target);

}  // namespace krein
