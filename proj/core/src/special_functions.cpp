#include "krein/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "krein/error.hpp"

namespace krein {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

struct Pair {
  double j;       // J_nu(x)
  double j_next;  // J_{nu+1}(x)
};

// The recurrence must start well past the turning point k = x: the error
// decays roughly like exp(-(2 sqrt2 / 3) m^{3/2} / sqrt(x)) with m = start - x,
// so m ~ 15 x^{1/3} buys full double precision.
std::size_t miller_start(std::size_t order, double x) {
  const double margin = std::max({40.0, std::ceil(1.2 * x), std::ceil(x + 15.0 * std::cbrt(x))});
  return order + static_cast<std::size_t>(margin);
}

// Integer order n: backward recurrence f_{k-1} = (2k/x) f_k - f_{k+1},
// normalized by J_0 + 2 sum_{k>=1} J_{2k} = 1.
Pair integer_pair(std::size_t n, double x) {
  const std::size_t start = miller_start(n + 1, x);
  double f_up = 0.0;   // f_{k+1}
  double f = 1e-30;    // f_k
  double sum = (start % 2 == 0) ? 2.0 * f : 0.0;
  double jn = start == n ? f : 0.0;
  double jn1 = start == n + 1 ? f : 0.0;
  for (std::size_t k = start; k >= 1; --k) {
    const double f_down = (2.0 * static_cast<double>(k) / x) * f - f_up;
    f_up = f;
    f = f_down;
    const std::size_t idx = k - 1;
    if (idx == n) jn = f;
    if (idx == n + 1) jn1 = f;
    if (idx == 0) {
      sum += f;
    } else if (idx % 2 == 0) {
      sum += 2.0 * f;
    }
    if (std::abs(f) > kRescaleAbove) {
      f *= kRescaleBy;
      f_up *= kRescaleBy;
      sum *= kRescaleBy;
      jn *= kRescaleBy;
      jn1 *= kRescaleBy;
    }
  }
  return {jn / sum, jn1 / sum};
}

// Half-integer order l + 1/2 through spherical Bessel functions,
// J_{l+1/2}(x) = sqrt(2x/pi) j_l(x). Backward recurrence
// f_{k-1} = ((2k+1)/x) f_k - f_{k+1}, normalized against the larger of the
// closed forms j_0 and j_1.
Pair half_integer_pair(std::size_t l, double x) {
  const std::size_t start = miller_start(l + 1, x);
  double f_up = 0.0;
  double f = 1e-30;
  double jl = start == l ? f : 0.0;
  double jl1 = start == l + 1 ? f : 0.0;
  double f0 = 0.0;
  double f1 = start == 1 ? f : 0.0;
  for (std::size_t k = start; k >= 1; --k) {
    const double f_down = (static_cast<double>(2 * k + 1) / x) * f - f_up;
    f_up = f;
    f = f_down;
    const std::size_t idx = k - 1;
    if (idx == l) jl = f;
    if (idx == l + 1) jl1 = f;
    if (idx == 1) f1 = f;
    if (idx == 0) f0 = f;
    if (std::abs(f) > kRescaleAbove) {
      f *= kRescaleBy;
      f_up *= kRescaleBy;
      jl *= kRescaleBy;
      jl1 *= kRescaleBy;
      f1 *= kRescaleBy;
      f0 *= kRescaleBy;
    }
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j0 = s / x;
  const double j1 = s / (x * x) - c / x;
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / f0 : j1 / f1;
  const double root = std::sqrt(2.0 * x / std::numbers::pi);
  return {root * jl * scale, root * jl1 * scale};
}

// No upper limit on x; used by the zero finders.
Pair bessel_pair(BesselOrder nu, double x) {
  if (nu.is_integer()) return integer_pair(nu.twice_order / 2, x);
  return half_integer_pair(nu.twice_order / 2, x);
}

double evaluate(BesselOrder nu, double x) { return bessel_pair(nu, x).j; }

void check_order(BesselOrder nu) {
  if (nu.twice_order > kMaxTwiceOrder) {
    fail(ErrorCode::DomainError,
         "Bessel order " + std::to_string(nu.value()) + " exceeds 500");
  }
}

// Newton on J_nu with J_nu' = (nu/x) J_nu - J_{nu+1}, kept inside [lo, hi]
// where J_nu changes sign; falls back to bisection.
double refine_zero(BesselOrder nu, double lo, double hi, double guess) {
  double f_lo = evaluate(nu, lo);
  const double f_hi = evaluate(nu, hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0) == (f_hi > 0)) {
    fail(ErrorCode::BracketFailure, "bessel_zero: no sign change in bracket [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const Pair p = bessel_pair(nu, x);
    if (p.j == 0.0) return x;
    if ((p.j > 0) == (f_lo > 0)) {
      lo = x;
      f_lo = p.j;
    } else {
      hi = x;
    }
    const double derivative = (nu.value() / x) * p.j - p.j_next;
    const double step = derivative != 0.0 ? p.j / derivative : 0.0;
    const double newton = x - step;
    if (derivative != 0.0 && newton > lo && newton < hi) {
      if (std::abs(step) <= 1e-15 * x) return newton;
      x = newton;
    } else {
      x = 0.5 * (lo + hi);
    }
    if (hi - lo <= 4e-16 * x) return 0.5 * (lo + hi);
  }
  fail(ErrorCode::NoConvergence, "bessel_zero: refinement did not converge");
}

// Zeros in (0, x_max), or the first `count` zeros when count > 0. The scan
// starts at nu (no zero lies below it) with unit steps; consecutive zeros are
// more than 2 apart, so a unit step never hides a pair.
std::vector<double> scan_zeros(BesselOrder nu, double x_max, std::size_t count) {
  std::vector<double> zeros;
  double x = std::max(nu.value(), 0.5);
  double fx = evaluate(nu, x);
  while (count == 0 ? x < x_max : zeros.size() < count) {
    double next = x + 1.0;
    if (count == 0) next = std::min(next, x_max);
    const double f_next = evaluate(nu, next);
    if (f_next == 0.0 || (f_next > 0) != (fx > 0)) {
      const double z = refine_zero(nu, x, next, 0.5 * (x + next));
      if (count == 0 && z >= x_max) break;
      zeros.push_back(z);
      // Restart just past the zero so the next bracket is clean.
      x = z + 0.5;
      fx = evaluate(nu, x);
      continue;
    }
    x = next;
    fx = f_next;
  }
  return zeros;
}

}  // namespace

double bessel_j(BesselOrder nu, double x) {
  check_order(nu);
  if (!(x > 0.0) || x > kMaxBesselArgument) {
    fail(ErrorCode::DomainError, "bessel_j: argument " + std::to_string(x) + " outside (0, 1e4]");
  }
  return evaluate(nu, x);
}

double bessel_zero(BesselOrder nu, std::size_t k) {
  check_order(nu);
  if (k == 0 || k > kMaxZeroIndex) {
    fail(ErrorCode::DomainError, "bessel_zero: index " + std::to_string(k) + " out of range");
  }
  const double v = nu.value();
  const double mu = 4.0 * v * v;
  const double beta = (static_cast<double>(k) + v / 2.0 - 0.25) * std::numbers::pi;
  const double third_term = 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(8.0 * beta, 3));
  if (std::abs(third_term) < 0.2) {
    const double guess = beta - (mu - 1.0) / (8.0 * beta);
    return refine_zero(nu, std::max(guess - 1.0, 1e-3), guess + 1.0, guess);
  }
  return scan_zeros(nu, 0.0, k).back();
}

std::vector<double> bessel_zeros(BesselOrder nu, double x_max) {
  check_order(nu);
  return scan_zeros(nu, x_max, 0);
}

double tan_fixed_point(std::size_t m) {
  if (m == 0 || m > kMaxZeroIndex) {
    fail(ErrorCode::DomainError, "tan_fixed_point: index " + std::to_string(m) + " out of range");
  }
  const double pi = std::numbers::pi;
  const double mm = static_cast<double>(m);
  double lo = mm * pi;
  double hi = (2.0 * mm + 1.0) * pi / 2.0;
  auto f = [](double t) { return t * std::cos(t) - std::sin(t); };
  const bool lo_positive = f(lo) > 0;
  double t = hi - 1.0 / hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double ft = f(t);
    if (ft == 0.0) return t;
    if ((ft > 0) == lo_positive) {
      lo = t;
    } else {
      hi = t;
    }
    const double derivative = -t * std::sin(t);
    const double step = ft / derivative;
    const double newton = t - step;
    if (newton > lo && newton < hi) {
      if (std::abs(step) <= 1e-15 * t) return newton;
      t = newton;
    } else {
      t = 0.5 * (lo + hi);
    }
    if (hi - lo <= 4e-16 * t) return 0.5 * (lo + hi);
  }
  fail(ErrorCode::NoConvergence, "tan_fixed_point: refinement did not converge");
}

}  // namespace krein
