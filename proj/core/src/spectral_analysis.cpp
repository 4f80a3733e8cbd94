#include "krein/spectral_analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "krein/error.hpp"
#include "krein/linalg.hpp"
#include "krein/special_functions.hpp"

namespace krein {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr double kTieTolerance = 1e-12;
constexpr std::size_t kFitSamples = 2000;
constexpr std::size_t kMinBreakpoints = 2;
constexpr std::size_t kRemainderBins = 8;

// Gamma(k / 2) for k >= 1 from Gamma(1) = 1, Gamma(1/2) = sqrt(pi).
long double gamma_half(unsigned k) {
  long double g = k % 2 == 0 ? 1.0L : std::sqrt(kPi);
  for (unsigned j = 2 - k % 2; j + 2 <= k; j += 2) g *= j / 2.0L;
  return g;
}

long double ball_volume_ld(unsigned n) {
  return std::pow(kPi, n / 2.0L) / gamma_half(n + 2);
}

long double sphere_area_ld(unsigned n) {
  return 2.0L * std::pow(kPi, n / 2.0L) / gamma_half(n);
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1] by Newton on the three-term recurrence.
GaussRule gauss_legendre(std::size_t order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (std::size_t i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Composite rule on [lo, hi].
GaussRule composite(double lo, double hi, std::size_t panels, const GaussRule& base) {
  GaussRule out;
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      out.nodes.push_back(mid + 0.5 * width * base.nodes[i]);
      out.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return out;
}

// Integral over S^{n-1} of (|xi|^{2r} / |xi|^{2m})^{n / (2(m - r))} in
// hyperspherical angles, n <= 4.
double sphere_integral(unsigned n, unsigned m, unsigned r) {
  const double power = n / (2.0 * (m - r));
  auto integrand = [&](const std::array<double, 4>& xi) {
    double norm2 = 0.0;
    for (unsigned i = 0; i < n; ++i) norm2 += xi[i] * xi[i];
    return std::pow(std::pow(norm2, r) / std::pow(norm2, m), power);
  };
  if (n == 1) return integrand({1.0, 0, 0, 0}) + integrand({-1.0, 0, 0, 0});

  const GaussRule base = gauss_legendre(16);
  const GaussRule theta = composite(0.0, std::numbers::pi, 4, base);
  const GaussRule phi = composite(0.0, 2.0 * std::numbers::pi, 8, base);
  double total = 0.0;
  if (n == 2) {
    for (std::size_t k = 0; k < phi.nodes.size(); ++k)
      total += phi.weights[k] * integrand({std::cos(phi.nodes[k]), std::sin(phi.nodes[k]), 0, 0});
    return total;
  }
  if (n == 3) {
    for (std::size_t i = 0; i < theta.nodes.size(); ++i) {
      const double t = theta.nodes[i];
      for (std::size_t k = 0; k < phi.nodes.size(); ++k) {
        const double p = phi.nodes[k];
        const std::array<double, 4> xi{std::cos(t), std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), 0};
        total += theta.weights[i] * phi.weights[k] * std::sin(t) * integrand(xi);
      }
    }
    return total;
  }
  for (std::size_t i = 0; i < theta.nodes.size(); ++i) {
    const double t1 = theta.nodes[i];
    for (std::size_t j = 0; j < theta.nodes.size(); ++j) {
      const double t2 = theta.nodes[j];
      for (std::size_t k = 0; k < phi.nodes.size(); ++k) {
        const double p = phi.nodes[k];
        const double s12 = std::sin(t1) * std::sin(t2);
        const std::array<double, 4> xi{std::cos(t1), std::sin(t1) * std::cos(t2), s12 * std::cos(p),
                                       s12 * std::sin(p)};
        const double jac = std::sin(t1) * std::sin(t1) * std::sin(t2);
        total += theta.weights[i] * theta.weights[j] * phi.weights[k] * jac * integrand(xi);
      }
    }
  }
  return total;
}

std::vector<double> expanded_or_throw(const Spectrum& s, std::size_t need, const char* which) {
  std::vector<double> v = s.expanded();
  if (v.size() < need) {
    fail(ErrorCode::InsufficientEigenvalues, std::string("universal_inequalities: need ") +
                                                 std::to_string(need) + " " + which + " eigenvalues, have " +
                                                 std::to_string(v.size()));
  }
  return v;
}

// Non-strict a <= b with a relative roundoff allowance.
InequalityReport non_strict(std::string name, double slack, double scale) {
  InequalityReport r;
  r.name = std::move(name);
  r.margin = slack / scale;
  r.satisfied = r.margin >= -kTieTolerance;
  return r;
}

InequalityReport strict(std::string name, double slack, double scale) {
  InequalityReport r;
  r.name = std::move(name);
  r.margin = slack / scale;
  r.inconclusive = std::abs(r.margin) <= kTieTolerance;
  r.satisfied = r.margin > 0.0 || r.inconclusive;
  return r;
}

Spectrum lower_ball(unsigned n, double radius, Realization which, double lambda_max) {
  if (n == 1) return interval_spectrum({-radius, radius}, which, lambda_max);
  return ball_spectrum({n, radius}, which, lambda_max);
}

}  // namespace

CountingFunction::CountingFunction(std::vector<std::pair<double, std::uint64_t>> breakpoints,
                                   double complete_below, std::string source)
    : points_(std::move(breakpoints)), complete_below_(complete_below), source_(std::move(source)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].first))
      fail(ErrorCode::InvalidArgument, "counting function: breakpoint is not finite");
    if (i > 0 && !(points_[i].first > points_[i - 1].first && points_[i].second > points_[i - 1].second))
      fail(ErrorCode::InvalidArgument, "counting function: breakpoints must increase");
  }
  if (!points_.empty() && points_.front().second == 0)
    fail(ErrorCode::InvalidArgument, "counting function: first count must be positive");
}

std::uint64_t CountingFunction::operator()(double lambda) const {
  const auto it = std::upper_bound(points_.begin(), points_.end(), lambda,
                                   [](double x, const auto& p) { return x < p.first; });
  return it == points_.begin() ? 0 : std::prev(it)->second;
}

CountingFunction counting_from_spectrum(const Spectrum& s, std::string source) {
  std::vector<std::pair<double, std::uint64_t>> points;
  points.reserve(s.entries.size());
  std::uint64_t total = 0;
  for (const SpectrumEntry& e : s.entries) {
    total += e.multiplicity;
    points.emplace_back(e.value, total);
  }
  return CountingFunction(std::move(points), s.complete_below, std::move(source));
}

InequalityReport counting_domination(const CountingFunction& n_k, const CountingFunction& n_d,
                                     const std::vector<double>& lambda_grid) {
  const double limit = std::min(n_k.complete_below(), n_d.complete_below());
  std::vector<double> points;
  for (double x : lambda_grid)
    if (x <= limit) points.push_back(x);
  for (const CountingFunction* f : {&n_k, &n_d}) {
    for (const auto& [x, count] : f->breakpoints()) {
      for (double y : {x * (1.0 - 1e-9), x, x * (1.0 + 1e-9)})
        if (y <= limit) points.push_back(y);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  InequalityReport r;
  r.name = "counting domination";
  r.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double slack = static_cast<double>(n_d(points[i])) - static_cast<double>(n_k(points[i]));
    r.margin = std::min(r.margin, slack);
    if (slack < 0.0) r.witnesses.push_back(i);
  }
  if (points.empty()) r.margin = 0.0;
  r.satisfied = r.witnesses.empty();
  return r;
}

double unit_ball_volume(unsigned n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "unit_ball_volume: n must be positive");
  return static_cast<double>(ball_volume_ld(n));
}

double weyl_leading(unsigned n, double volume) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "weyl_leading: n must be positive");
  if (!(volume > 0.0)) fail(ErrorCode::InvalidArgument, "weyl_leading: volume must be positive");
  return static_cast<double>(std::pow(2.0L * kPi, -static_cast<long double>(n)) * ball_volume_ld(n) *
                             volume);
}

KozlovCoefficient kozlov_coefficient(unsigned n, unsigned m, unsigned r, double volume) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "kozlov_coefficient: n must be positive");
  if (!(m > r)) fail(ErrorCode::InvalidArgument, "kozlov_coefficient: need m > r");
  if (!(volume > 0.0)) fail(ErrorCode::InvalidArgument, "kozlov_coefficient: volume must be positive");
  const long double prefactor = volume / (n * std::pow(2.0L * kPi, static_cast<long double>(n)));
  KozlovCoefficient k;
  // The isotropic integrand is 1 on the sphere.
  k.value = static_cast<double>(prefactor * sphere_area_ld(n));
  if (n <= 4) {
    k.quadrature = static_cast<double>(prefactor * sphere_integral(n, m, r));
    k.self_check = std::abs(*k.quadrature - k.value) / k.value;
  }
  return k;
}

WeylCoefficients two_term_ball_coefficients(unsigned n, double radius, Realization which) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "two_term_ball_coefficients: n must be at least 2");
  if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "two_term_ball_coefficients: radius must be positive");
  const long double vn = ball_volume_ld(n);
  const long double vn1 = ball_volume_ld(n - 1);
  const long double rr = radius;
  const long double lead = std::pow(2.0L * kPi, -static_cast<long double>(n)) * vn * vn * std::pow(rr, n);
  long double bracket = (n / 4.0L) * vn;
  if (which == Realization::Krein) bracket += vn1;
  const long double second =
      -std::pow(2.0L * kPi, 1.0L - n) * vn1 * bracket * std::pow(rr, static_cast<long double>(n - 1));
  return {static_cast<double>(lead), static_cast<double>(second)};
}

WeylFit weyl_fit(const CountingFunction& counting, unsigned n, double lo, double hi,
                 const WeylCoefficients& analytic) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "weyl_fit: n must be positive");
  if (!(lo > 0.0 && hi > lo)) fail(ErrorCode::InsufficientData, "weyl_fit: empty window");
  if (hi > counting.complete_below())
    fail(ErrorCode::InsufficientData, "weyl_fit: window extends past the complete range");
  const auto& bp = counting.breakpoints();
  const auto in_window = std::count_if(bp.begin(), bp.end(),
                                       [&](const auto& p) { return p.first >= lo && p.first <= hi; });
  if (static_cast<std::size_t>(in_window) < kMinBreakpoints) {
    fail(ErrorCode::InsufficientData, "weyl_fit: only " + std::to_string(in_window) +
                                          " eigenvalues in the window");
  }

  const double p_exp = n / 2.0;
  const double q_exp = (n - 1.0) / 2.0;
  const std::array<double, 3> exps{p_exp, q_exp, (n - 2.0) / 2.0};
  std::vector<double> lam(kFitSamples), val(kFitSamples);
  const double log_ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < kFitSamples; ++i) {
    lam[i] = lo * std::exp(log_ratio * static_cast<double>(i) / (kFitSamples - 1));
    val[i] = static_cast<double>(counting(lam[i]));
  }
  // Normal equations, columns scaled to unit size at hi. The third column
  // absorbs the lambda^{(n-2)/2} remainder so it does not bias the other two.
  Matrix gram(3, 3), rhs(3, 1);
  for (std::size_t i = 0; i < kFitSamples; ++i) {
    std::array<double, 3> col;
    for (std::size_t c = 0; c < 3; ++c) col[c] = std::pow(lam[i] / hi, exps[c]);
    for (std::size_t r = 0; r < 3; ++r) {
      rhs(r, 0) += col[r] * val[i];
      for (std::size_t c = 0; c < 3; ++c) gram(r, c) += col[r] * col[c];
    }
  }
  const Matrix coef = solve(gram, rhs);
  WeylFit fit;
  fit.n = n;
  fit.c_lead = coef(0, 0) / std::pow(hi, exps[0]);
  fit.c_second = coef(1, 0) / std::pow(hi, exps[1]);
  fit.c_third = coef(2, 0) / std::pow(hi, exps[2]);
  fit.analytic_lead = analytic.lead;
  fit.analytic_second = analytic.second;
  fit.window_lo = lo;
  fit.window_hi = hi;
  fit.samples = kFitSamples;
  for (std::size_t i = 0; i < kFitSamples; ++i) {
    double model = 0.0;
    for (std::size_t c = 0; c < 3; ++c) model += coef(c, 0) * std::pow(lam[i] / hi, exps[c]);
    fit.residual_sup = std::max(fit.residual_sup, std::abs(val[i] - model));
  }

  // Binned maxima of the remainder against the analytic two-term law. The
  // sup on a bin is reached at a bin edge or at a one-sided limit at a jump.
  auto remainder = [&](double x, double count) {
    return std::abs(count - analytic.lead * std::pow(x, p_exp) - analytic.second * std::pow(x, q_exp));
  };
  const double mid = std::sqrt(lo * hi);
  const double bin_ratio = std::pow(hi / mid, 1.0 / kRemainderBins);
  std::vector<double> xs, ys;
  for (std::size_t b = 0; b < kRemainderBins; ++b) {
    const double b_lo = mid * std::pow(bin_ratio, static_cast<double>(b));
    const double b_hi = b == kRemainderBins - 1 ? hi : b_lo * bin_ratio;
    double worst = std::max(remainder(b_lo, static_cast<double>(counting(b_lo))),
                            remainder(b_hi, static_cast<double>(counting(b_hi))));
    auto it = std::upper_bound(bp.begin(), bp.end(), b_lo, [](double x, const auto& p) { return x < p.first; });
    for (; it != bp.end() && it->first <= b_hi; ++it) {
      const double before = it == bp.begin() ? 0.0 : static_cast<double>(std::prev(it)->second);
      worst = std::max({worst, remainder(it->first, before), remainder(it->first, static_cast<double>(it->second))});
    }
    if (worst > 0.0) {
      xs.push_back(std::log(std::sqrt(b_lo * b_hi)));
      ys.push_back(std::log(worst));
    }
  }
  if (xs.size() >= 2) {
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    fit.remainder_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return fit;
}

std::vector<InequalityReport> sandwich_check(unsigned n, double radius, double lambda_max) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "sandwich_check: n must be at least 2");
  if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "sandwich_check: radius must be positive");
  if (!(lambda_max > 0.0)) fail(ErrorCode::InvalidArgument, "sandwich_check: lambda_max must be positive");
  const CountingFunction d_n = counting_from_spectrum(ball_spectrum({n, radius}, Realization::Dirichlet, lambda_max));
  const CountingFunction k_n = counting_from_spectrum(ball_spectrum({n, radius}, Realization::Krein, lambda_max));
  const CountingFunction d_low =
      counting_from_spectrum(lower_ball(n - 1, radius, Realization::Dirichlet, lambda_max));
  const CountingFunction k_low = counting_from_spectrum(lower_ball(n - 1, radius, Realization::Krein, lambda_max));

  std::vector<double> points{lambda_max};
  for (const CountingFunction* f : {&d_n, &k_n, &d_low, &k_low})
    for (const auto& p : f->breakpoints()) points.push_back(p.first);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  InequalityReport upper, lower;
  upper.name = "sandwich upper";
  lower.name = "sandwich lower";
  upper.margin = lower.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    const double dn = static_cast<double>(d_n(x));
    const double kn = static_cast<double>(k_n(x));
    const double up_slack = kn + static_cast<double>(d_low(x)) - dn;
    const double low_slack = dn - kn - static_cast<double>(k_low(x));
    upper.margin = std::min(upper.margin, up_slack);
    lower.margin = std::min(lower.margin, low_slack);
    if (up_slack < 0.0) upper.witnesses.push_back(i);
    if (low_slack < 0.0) lower.witnesses.push_back(i);
  }
  upper.satisfied = upper.witnesses.empty();
  lower.satisfied = lower.witnesses.empty();
  return {upper, lower};
}

std::vector<InequalityReport> universal_inequalities(const Spectrum& krein, const Spectrum& dirichlet,
                                                     unsigned n, double volume, std::size_t k_max) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "universal_inequalities: n must be at least 2");
  if (!(volume > 0.0)) fail(ErrorCode::InvalidArgument, "universal_inequalities: volume must be positive");
  if (k_max == 0) fail(ErrorCode::InvalidArgument, "universal_inequalities: k_max must be positive");
  const std::vector<double> lk = expanded_or_throw(krein, std::max<std::size_t>(n + 1, k_max + 1), "Krein");
  const std::vector<double> ld = expanded_or_throw(dirichlet, std::max<std::size_t>(2, k_max), "Dirichlet");
  const double nn = n;
  std::vector<InequalityReport> out;

  const double ratio_bound = (nn * nn + 8 * nn + 20) / ((nn + 2) * (nn + 2));
  out.push_back(non_strict("ratio bound", ratio_bound - lk[1] / lk[0], 1.0));

  double sum = 0.0;
  for (std::size_t j = 1; j <= n; ++j) sum += lk[j];
  const double rhs = (nn + 4) * lk[0] - 4.0 / (nn + 4) * (lk[1] - lk[0]);
  out.push_back(strict("sum bound", rhs - sum, lk[0]));

  InequalityReport yang;
  yang.name = "Yang bound";
  yang.margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= k_max; ++k) {
    double lhs = 0.0, right = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double gap = lk[k] - lk[j];
      lhs += gap * gap;
      right += gap * lk[j];
    }
    right *= 4.0 * (nn + 2) / (nn * nn);
    const double scale = std::max(right, lk[k] * lk[k]);
    const double m = (right - lhs) / scale;
    yang.margin = std::min(yang.margin, m);
    if (m < -kTieTolerance) yang.witnesses.push_back(k);
  }
  yang.satisfied = yang.witnesses.empty();
  out.push_back(yang);

  const double j0 = bessel_zero(BesselOrder{n - 2}, 1);
  const double lower_bound =
      std::pow(2.0, 2.0 / nn) * j0 * j0 * std::pow(unit_ball_volume(n) / volume, 2.0 / nn);
  out.push_back(strict("Dirichlet lower bound", ld[1] - lower_bound, ld[1]));
  out.push_back(non_strict("Dirichlet second below Krein first", lk[0] - ld[1], lk[0]));

  const double payne = lk[0] / ld[0];
  out.push_back(non_strict("Payne ratio", std::min(payne - 1.0, 4.0 - payne), 1.0));

  InequalityReport dom;
  dom.name = "index domination";
  dom.margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k_max; ++j) {
    const double m = (lk[j] - ld[j]) / lk[j];
    dom.margin = std::min(dom.margin, m);
    if (m < -kTieTolerance) dom.witnesses.push_back(j + 1);
  }
  dom.satisfied = dom.witnesses.empty();
  out.push_back(dom);
  return out;
}

}  // namespace krein
