#pragma once

// Bessel functions of the first kind for integer and half-integer order, their
// positive zeros, and the positive roots of tan t = t.

#include <cstddef>
#include <vector>

namespace krein {

// nu = twice_order / 2.
struct BesselOrder {
  unsigned twice_order = 0;

  static constexpr BesselOrder integer(unsigned n) { return {2 * n}; }
  static constexpr BesselOrder half_integer(unsigned l) { return {2 * l + 1}; }  // l + 1/2

  constexpr double value() const { return twice_order / 2.0; }
  constexpr bool is_integer() const { return twice_order % 2 == 0; }

  friend constexpr bool operator==(BesselOrder, BesselOrder) = default;
  friend constexpr auto operator<=>(BesselOrder, BesselOrder) = default;
};

inline constexpr unsigned kMaxTwiceOrder = 1000;
inline constexpr double kMaxBesselArgument = 1e4;
inline constexpr std::size_t kMaxZeroIndex = 100000;

// J_nu(x) for 0 < x <= 1e4, nu <= 500.
double bessel_j(BesselOrder nu, double x);

// k-th positive zero j_{nu,k}, k >= 1.
double bessel_zero(BesselOrder nu, std::size_t k);

// All positive zeros of J_nu below x_max, ascending.
std::vector<double> bessel_zeros(BesselOrder nu, double x_max);

// m-th positive root of tan t = t, in (m pi, (2m + 1) pi / 2).
double tan_fixed_point(std::size_t m);

}  // namespace krein
