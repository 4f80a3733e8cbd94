#include "krein/exact_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "krein/error.hpp"
#include "krein/special_functions.hpp"

namespace krein {

namespace {

constexpr double kMergeTolerance = 1e-11;

void check_interval(const IntervalSpec& spec) {
  if (!(spec.length() > 0.0) || !std::isfinite(spec.length()))
    fail(ErrorCode::InvalidArgument, "interval: need a < b");
}

void check_ball(const BallSpec& spec) {
  if (spec.n < 2) fail(ErrorCode::InvalidArgument, "ball: dimension must be at least 2");
  if (!(spec.radius > 0.0) || !std::isfinite(spec.radius))
    fail(ErrorCode::InvalidArgument, "ball: radius must be positive");
}

// k-th nonzero Krein eigenvalue of the interval, k >= 1: odd k are even
// eigenfunctions, even k are odd ones.
double interval_krein_value(const IntervalSpec& spec, std::size_t k) {
  const std::size_t m = (k + 1) / 2;
  const IntervalBranch branch = k % 2 == 1 ? IntervalBranch::Even : IntervalBranch::Odd;
  const double w = interval_krein_wavenumber(spec, branch, m);
  return w * w;
}

}  // namespace

std::uint64_t Spectrum::count() const {
  std::uint64_t total = 0;
  for (const SpectrumEntry& e : entries) total += e.multiplicity;
  return total;
}

std::vector<double> Spectrum::expanded() const {
  std::vector<double> out;
  out.reserve(count());
  for (const SpectrumEntry& e : entries) out.insert(out.end(), e.multiplicity, e.value);
  return out;
}

Spectrum interval_dirichlet(const IntervalSpec& spec, std::size_t count) {
  check_interval(spec);
  if (count == 0) fail(ErrorCode::InvalidArgument, "interval_dirichlet: count must be positive");
  Spectrum s;
  s.entries.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) {
    const double w = static_cast<double>(j) * std::numbers::pi / spec.length();
    s.entries.push_back({w * w, 1});
  }
  s.complete_below = s.entries.back().value;
  return s;
}

double interval_krein_wavenumber(const IntervalSpec& spec, IntervalBranch branch, std::size_t m) {
  check_interval(spec);
  if (m == 0) fail(ErrorCode::InvalidArgument, "interval_krein: index must be positive");
  const double half = spec.length() / 2.0;
  // Even: sin(k L / 2) = 0. Odd: k L / 2 = tan(k L / 2).
  if (branch == IntervalBranch::Even) return static_cast<double>(m) * std::numbers::pi / half;
  return tan_fixed_point(m) / half;
}

Spectrum interval_krein(const IntervalSpec& spec, std::size_t count) {
  check_interval(spec);
  if (count == 0) fail(ErrorCode::InvalidArgument, "interval_krein: count must be positive");
  Spectrum s;
  s.kernel = KernelDimension::finite(2);
  s.entries.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) s.entries.push_back({interval_krein_value(spec, k), 1});
  s.complete_below = s.entries.back().value;
  return s;
}

Spectrum interval_spectrum(const IntervalSpec& spec, Realization which, double lambda_max) {
  check_interval(spec);
  if (!(lambda_max > 0.0)) fail(ErrorCode::InvalidArgument, "interval_spectrum: lambda_max <= 0");
  Spectrum s;
  s.complete_below = lambda_max;
  if (which == Realization::Dirichlet) {
    for (std::size_t j = 1;; ++j) {
      const double w = static_cast<double>(j) * std::numbers::pi / spec.length();
      if (w * w > lambda_max) break;
      s.entries.push_back({w * w, 1});
    }
    return s;
  }
  s.kernel = KernelDimension::finite(2);
  for (std::size_t k = 1;; ++k) {
    const double v = interval_krein_value(spec, k);
    if (v > lambda_max) break;
    s.entries.push_back({v, 1});
  }
  return s;
}

double interval_bc_residual(const IntervalSpec& spec, double v_a, double v_b, double dv_a,
                            double dv_b) {
  check_interval(spec);
  const double slope = (v_b - v_a) / spec.length();
  return std::max(std::abs(dv_a - slope), std::abs(dv_b - slope));
}

double interval_krein_bc_residual(const IntervalSpec& spec, IntervalBranch branch, std::size_t m) {
  const double k = interval_krein_wavenumber(spec, branch, m);
  const double c = 0.5 * (spec.a + spec.b);
  const double za = k * (spec.a - c);
  const double zb = k * (spec.b - c);
  if (branch == IntervalBranch::Even) {
    return interval_bc_residual(spec, std::cos(za), std::cos(zb), -k * std::sin(za),
                                -k * std::sin(zb));
  }
  return interval_bc_residual(spec, std::sin(za), std::sin(zb), k * std::cos(za), k * std::cos(zb));
}

std::uint64_t ball_multiplicity(unsigned n, unsigned l) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "ball_multiplicity: n must be at least 2");
  if (l == 0) return 1;
  __extension__ typedef unsigned __int128 u128;
  constexpr u128 limit = std::numeric_limits<std::int64_t>::max();
  // C(l + n - 3, l - 1) by the exact multiplicative recurrence.
  const std::uint64_t top = static_cast<std::uint64_t>(l) + n - 3;
  const std::uint64_t choose = std::min<std::uint64_t>(l - 1, top - (l - 1));
  u128 binom = 1;
  for (std::uint64_t i = 1; i <= choose; ++i) {
    binom = binom * (top - choose + i) / i;
    if (binom > limit) fail(ErrorCode::Overflow, "ball_multiplicity: exceeds 2^63 - 1");
  }
  const u128 d = (static_cast<u128>(2 * static_cast<std::uint64_t>(l) + n - 2) * binom) / l;
  if (d > limit) fail(ErrorCode::Overflow, "ball_multiplicity: exceeds 2^63 - 1");
  return static_cast<std::uint64_t>(d);
}

unsigned channel_twice_order(unsigned n, unsigned l, Realization which) {
  return 2 * l + n - (which == Realization::Dirichlet ? 2 : 0);
}

Spectrum ball_spectrum(const BallSpec& spec, Realization which, double lambda_max) {
  check_ball(spec);
  if (!(lambda_max > 0.0)) fail(ErrorCode::InvalidArgument, "ball_spectrum: lambda_max <= 0");
  const double r2 = spec.radius * spec.radius;
  const double x_max = std::sqrt(lambda_max) * spec.radius;

  std::vector<SpectrumEntry> raw;
  for (unsigned l = 0;; ++l) {
    const BesselOrder nu{channel_twice_order(spec.n, l, which)};
    // j_{nu,1} > nu: nothing left below the cutoff.
    if (nu.value() >= x_max) break;
    const std::uint64_t mult = ball_multiplicity(spec.n, l);
    for (double z : bessel_zeros(nu, x_max * (1.0 + 1e-15))) {
      const double value = z * z / r2;
      if (value <= lambda_max) raw.push_back({value, mult});
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const SpectrumEntry& x, const SpectrumEntry& y) { return x.value < y.value; });

  Spectrum s;
  s.kernel = which == Realization::Krein ? KernelDimension::infinite() : KernelDimension::finite(0);
  s.complete_below = lambda_max;
  for (const SpectrumEntry& e : raw) {
    if (!s.entries.empty() && e.value - s.entries.back().value <= kMergeTolerance * e.value) {
      s.entries.back().multiplicity += e.multiplicity;
    } else {
      s.entries.push_back(e);
    }
  }
  return s;
}

InterlaceReport channel_interlace_report(const BallSpec& spec, unsigned l, std::size_t k_max) {
  check_ball(spec);
  if (k_max == 0) fail(ErrorCode::InvalidArgument, "channel_interlace_report: k_max must be positive");
  const BesselOrder dirichlet{channel_twice_order(spec.n, l, Realization::Dirichlet)};
  const BesselOrder krein{dirichlet.twice_order + 2};
  InterlaceReport report;
  report.min_relative_gap = std::numeric_limits<double>::infinity();
  double next_d = bessel_zero(dirichlet, 1);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double d = next_d;
    const double kr = bessel_zero(krein, k);
    next_d = bessel_zero(dirichlet, k + 1);
    const double lo_gap = (kr * kr - d * d) / (kr * kr);
    const double hi_gap = (next_d * next_d - kr * kr) / (next_d * next_d);
    report.min_relative_gap = std::min({report.min_relative_gap, lo_gap, hi_gap});
    if (!(lo_gap > 0.0 && hi_gap > 0.0)) report.satisfied = false;
    ++report.checked;
  }
  return report;
}

}  // namespace krein
