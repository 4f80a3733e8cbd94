#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "krein/spectral_analysis.hpp"
#include "krein/special_functions.hpp"
#include "test_support.hpp"

using namespace krein;
using krein::testing::code_of;
using krein::testing::rel_diff;

namespace {

const double pi = std::numbers::pi;

const InequalityReport& find(const std::vector<InequalityReport>& rs, const std::string& name) {
  for (const InequalityReport& r : rs)
    if (r.name == name) return r;
  FAIL("no report named " << name);
  return rs.front();
}

// N(lambda) = floor(lambda / 4) up to `top`.
CountingFunction floor_counting(double top) {
  std::vector<std::pair<double, std::uint64_t>> pts;
  for (std::uint64_t k = 1; 4.0 * k <= top; ++k) pts.emplace_back(4.0 * k, k);
  return CountingFunction(pts, top, "floor");
}

}  // namespace

TEST_CASE("counting functions") {
  const CountingFunction n = counting_from_spectrum(interval_dirichlet({0.0, pi}, 10));
  CHECK(n(10.0) == 3);
  CHECK(n(9.0) == 3);
  CHECK(n(8.999) == 2);
  CHECK(n(0.5) == 0);
  CHECK(n(1e9) == 10);

  const CountingFunction disk = counting_from_spectrum(ball_spectrum({2, 1.0}, Realization::Krein, 100.0));
  CHECK(disk(14.0) == 0);
  CHECK(disk(15.0) == 1);
  const CountingFunction empty = counting_from_spectrum(Spectrum{});
  CHECK(empty(1e6) == 0);

  using Points = std::vector<std::pair<double, std::uint64_t>>;
  CHECK(code_of([] { CountingFunction(Points{{1.0, 2}, {1.0, 3}}, 5.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { CountingFunction(Points{{1.0, 2}, {2.0, 2}}, 5.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { CountingFunction(Points{{1.0, 0}}, 5.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("counting domination") {
  const std::vector<double> grid{1.0, 10.0, 100.0, 1000.0};
  for (unsigned n : {2u, 3u}) {
    const double top = n == 2 ? 1e4 : 2000.0;
    const CountingFunction k = counting_from_spectrum(ball_spectrum({n, 1.0}, Realization::Krein, top));
    const CountingFunction d = counting_from_spectrum(ball_spectrum({n, 1.0}, Realization::Dirichlet, top));
    const InequalityReport r = counting_domination(k, d, grid);
    CHECK(r.satisfied);
    CHECK(r.margin >= 0.0);
    CHECK(r.witnesses.empty());
    // Reversed roles must fail.
    CHECK_FALSE(counting_domination(d, k, grid).satisfied);
  }
  const CountingFunction ik = counting_from_spectrum(interval_spectrum({0.0, 1.0}, Realization::Krein, 1e4));
  const CountingFunction id = counting_from_spectrum(interval_spectrum({0.0, 1.0}, Realization::Dirichlet, 1e4));
  CHECK(counting_domination(ik, id, grid).satisfied);
  const InequalityReport same = counting_domination(id, id, grid);
  CHECK(same.satisfied);
  CHECK(same.margin == 0.0);
}

TEST_CASE("Weyl constants") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0));
  CHECK(unit_ball_volume(4) == doctest::Approx(pi * pi / 2.0));
  CHECK(unit_ball_volume(5) == doctest::Approx(8.0 * pi * pi / 15.0));
  CHECK(rel_diff(weyl_leading(2, pi), 0.25) <= 1e-15);
  CHECK(rel_diff(weyl_leading(3, 4.0 * pi / 3.0), 2.0 / (9.0 * pi)) <= 1e-15);
  CHECK(rel_diff(weyl_leading(1, 3.0), 3.0 / pi) <= 1e-15);
  CHECK(code_of([] { weyl_leading(2, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Kozlov coefficient") {
  for (unsigned n : {2u, 3u, 4u}) {
    for (double scale : {1.0, 2.5}) {
      const double vol = scale * unit_ball_volume(n);
      const KozlovCoefficient k = kozlov_coefficient(n, 2, 1, vol);
      CHECK(k.value == weyl_leading(n, vol));
      REQUIRE(k.quadrature.has_value());
      CHECK(k.self_check <= 1e-8);
    }
    // Other orders: the isotropic integrand is still 1.
    const KozlovCoefficient k = kozlov_coefficient(n, 3, 0, 1.0);
    CHECK(rel_diff(k.value, weyl_leading(n, 1.0)) <= 1e-15);
    CHECK(k.self_check <= 1e-8);
  }
  CHECK(rel_diff(kozlov_coefficient(2, 2, 1, pi).value, 0.25) <= 1e-15);
  CHECK(rel_diff(kozlov_coefficient(3, 2, 1, 4.0 * pi / 3.0).value, 2.0 / (9.0 * pi)) <= 1e-15);
  CHECK(kozlov_coefficient(1, 2, 1, 1.0).self_check <= 1e-15);
  CHECK_FALSE(kozlov_coefficient(6, 2, 1, 1.0).quadrature.has_value());
  CHECK(code_of([] { kozlov_coefficient(2, 1, 1, 1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("two-term ball coefficients") {
  const WeylCoefficients k2 = two_term_ball_coefficients(2, 1.0, Realization::Krein);
  CHECK(rel_diff(k2.lead, 0.25) <= 1e-15);
  CHECK(rel_diff(k2.second, -(0.5 + 2.0 / pi)) <= 1e-15);
  const WeylCoefficients k3 = two_term_ball_coefficients(3, 1.0, Realization::Krein);
  const WeylCoefficients d3 = two_term_ball_coefficients(3, 1.0, Realization::Dirichlet);
  CHECK(rel_diff(k3.lead, 2.0 / (9.0 * pi)) <= 1e-15);
  CHECK(rel_diff(k3.second, -0.5) <= 1e-15);
  CHECK(rel_diff(d3.lead, k3.lead) == 0.0);
  CHECK(rel_diff(d3.second, -0.25) <= 1e-15);
  for (unsigned n = 2; n <= 7; ++n) {
    for (double r : {0.5, 1.0, 3.0}) {
      const WeylCoefficients d = two_term_ball_coefficients(n, r, Realization::Dirichlet);
      const WeylCoefficients k = two_term_ball_coefficients(n, r, Realization::Krein);
      const double vn1 = unit_ball_volume(n - 1);
      const double gap = std::pow(2 * pi, 1.0 - n) * vn1 * vn1 * std::pow(r, n - 1.0);
      CHECK(rel_diff(d.second - k.second, gap) <= 1e-13);
      CHECK(rel_diff(d.lead, weyl_leading(n, unit_ball_volume(n) * std::pow(r, n))) <= 1e-14);
    }
  }
}

TEST_CASE("Weyl fit") {
  const CountingFunction k = counting_from_spectrum(ball_spectrum({2, 1.0}, Realization::Krein, 1e4));
  const WeylCoefficients a = two_term_ball_coefficients(2, 1.0, Realization::Krein);
  const WeylFit wide = weyl_fit(k, 2, 1e2, 1e4, a);
  CHECK(wide.samples >= 50);
  CHECK(rel_diff(wide.c_lead, 0.25) <= 1e-2);
  CHECK(rel_diff(wide.c_second, -(0.5 + 2.0 / pi)) <= 5e-2);
  CHECK(wide.analytic_lead == a.lead);
  CHECK(wide.residual_sup > 0.0);
  CHECK(std::isfinite(wide.remainder_slope));

  // Fit errors shrink as the window grows.
  const WeylFit narrow = weyl_fit(k, 2, 1e2, 1e3, a);
  CHECK(std::abs(wide.c_lead - a.lead) < std::abs(narrow.c_lead - a.lead));
  CHECK(std::abs(wide.c_second - a.second) < std::abs(narrow.c_second - a.second));

  const WeylFit syn = weyl_fit(floor_counting(1e4), 2, 1e2, 1e4, {0.25, 0.0});
  CHECK(syn.c_lead == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(std::abs(syn.c_second) < 2e-2);

  CHECK(code_of([&] { weyl_fit(k, 2, 1e2, 2e4, a); }) == ErrorCode::InsufficientData);
  CHECK(code_of([&] { weyl_fit(k, 2, 1e3, 1e2, a); }) == ErrorCode::InsufficientData);
  CHECK(code_of([&] { weyl_fit(k, 2, 1.0, 10.0, a); }) == ErrorCode::InsufficientData);
}

TEST_CASE("sandwich inequalities") {
  for (const auto& [n, top] : {std::pair{2u, 1e4}, std::pair{3u, 2000.0}, std::pair{4u, 800.0}}) {
    const std::vector<InequalityReport> rs = sandwich_check(n, 1.0, top);
    REQUIRE(rs.size() == 2);
    for (const InequalityReport& r : rs) {
      CHECK(r.satisfied);
      CHECK(r.margin >= 0.0);
    }
  }
  for (const InequalityReport& r : sandwich_check(3, 2.0, 1.0)) {
    CHECK(r.satisfied);
    CHECK(r.margin == 0.0);
  }
  CHECK(code_of([] { sandwich_check(1, 1.0, 10.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("universal inequalities on the disk") {
  const Spectrum k = ball_spectrum({2, 1.0}, Realization::Krein, 3000.0);
  const Spectrum d = ball_spectrum({2, 1.0}, Realization::Dirichlet, 3000.0);
  const std::vector<InequalityReport> rs = universal_inequalities(k, d, 2, pi, 20);
  REQUIRE(rs.size() == 7);
  const double j11 = bessel_zero(BesselOrder::integer(1), 1);
  const double j21 = bessel_zero(BesselOrder::integer(2), 1);
  const double j01 = bessel_zero(BesselOrder::integer(0), 1);

  const InequalityReport& ratio = find(rs, "ratio bound");
  CHECK(ratio.satisfied);
  CHECK(rel_diff(ratio.margin, 2.5 - j21 * j21 / (j11 * j11)) <= 1e-12);
  CHECK(ratio.margin > 0.7);
  CHECK(find(rs, "sum bound").satisfied);
  CHECK(find(rs, "sum bound").margin > 0.0);
  CHECK(find(rs, "Yang bound").satisfied);
  const InequalityReport& lower = find(rs, "Dirichlet lower bound");
  CHECK(lower.satisfied);
  CHECK_FALSE(lower.inconclusive);
  CHECK(rel_diff(lower.margin, (j11 * j11 - 2 * j01 * j01) / (j11 * j11)) <= 1e-12);
  const InequalityReport& tie = find(rs, "Dirichlet second below Krein first");
  CHECK(tie.satisfied);
  CHECK(std::abs(tie.margin) <= 1e-12);
  const InequalityReport& payne = find(rs, "Payne ratio");
  CHECK(payne.satisfied);
  // Ratio about 2.539: the upper side of [1, 4] is the nearer one.
  CHECK(rel_diff(4.0 - payne.margin, j11 * j11 / (j01 * j01)) <= 1e-12);
  CHECK(find(rs, "index domination").satisfied);
}

TEST_CASE("universal inequalities on other balls") {
  for (unsigned n : {3u, 4u, 5u}) {
    const Spectrum k = ball_spectrum({n, 1.0}, Realization::Krein, 3000.0);
    const Spectrum d = ball_spectrum({n, 1.0}, Realization::Dirichlet, 3000.0);
    for (const InequalityReport& r : universal_inequalities(k, d, n, unit_ball_volume(n), 20)) {
      CHECK_MESSAGE(r.satisfied, r.name);
      if (r.name == "Dirichlet second below Krein first") {
        CHECK(std::abs(r.margin) <= 1e-12);
      } else {
        CHECK_MESSAGE(r.margin > 0.0, r.name);
      }
    }
  }
}

TEST_CASE("universal inequalities detect violations") {
  Spectrum k, d;
  k.entries = {{1.0, 1}, {10.0, 1}, {11.0, 1}, {12.0, 1}};
  d.entries = {{2.0, 1}, {3.0, 1}, {20.0, 1}};
  const std::vector<InequalityReport> rs = universal_inequalities(k, d, 2, pi, 3);
  CHECK_FALSE(find(rs, "ratio bound").satisfied);
  CHECK_FALSE(find(rs, "sum bound").satisfied);
  CHECK_FALSE(find(rs, "Yang bound").satisfied);
  CHECK_FALSE(find(rs, "Payne ratio").satisfied);
  const InequalityReport& dom = find(rs, "index domination");
  CHECK_FALSE(dom.satisfied);
  CHECK(dom.witnesses == std::vector<std::size_t>{1, 3});
  CHECK(code_of([&] { universal_inequalities(k, d, 2, pi, 10); }) == ErrorCode::InsufficientEigenvalues);
  CHECK(code_of([&] { universal_inequalities(k, d, 1, 2.0, 2); }) == ErrorCode::InvalidArgument);
}
