#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "krein/special_functions.hpp"
#include "test_support.hpp"

using namespace krein;
using krein::testing::code_of;
using krein::testing::rel_diff;

namespace {

// Power series sum_m (-1)^m (x/2)^{2m+nu} / (m! Gamma(m+nu+1)) in long double,
// terms summed with Kahan compensation. Good to ~1e-15 absolute for x <= 12.
long double series_j(BesselOrder nu, long double x) {
  const long double v = static_cast<long double>(nu.value());
  const long double half = x / 2;
  long double term = std::pow(half, v) / std::tgamma(v + 1);
  long double sum = 0;
  long double carry = 0;
  for (int m = 0; m < 200; ++m) {
    const long double y = term - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    term *= -half * half / ((m + 1) * (m + 1 + v));
    if (std::abs(term) < 1e-40L * std::abs(sum) && m > 5) break;
  }
  return sum;
}

// k-th zero by scanning the series in steps of 0.1 and bisecting to the end.
long double series_zero(BesselOrder nu, int k) {
  long double x = 0.05L;
  long double fx = series_j(nu, x);
  int found = 0;
  while (true) {
    const long double next = x + 0.1L;
    const long double fn = series_j(nu, next);
    if ((fx > 0) != (fn > 0)) {
      if (++found == k) {
        long double lo = x;
        long double hi = next;
        for (int i = 0; i < 100; ++i) {
          const long double mid = (lo + hi) / 2;
          if ((series_j(nu, mid) > 0) == (fx > 0)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        return (lo + hi) / 2;
      }
    }
    x = next;
    fx = fn;
  }
}

double tan_oracle(int m) {
  double lo = m * std::numbers::pi;
  double hi = (2 * m + 1) * std::numbers::pi / 2;
  auto f = [](double t) { return t * std::cos(t) - std::sin(t); };
  const bool lo_positive = f(lo) > 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("series oracle reproduces the reference zeros") {
  CHECK(std::abs(series_zero(BesselOrder::integer(0), 1) - 2.404825557695773L) <= 1e-14L);
  CHECK(std::abs(series_zero(BesselOrder::integer(1), 1) - 3.831705970207512L) <= 1e-14L);
  CHECK(std::abs(tan_oracle(1) - 4.493409457909064) <= 1e-14);
  CHECK(std::abs(tan_oracle(2) - 7.725251836937707) <= 1e-14);
}

TEST_CASE("bessel_j against closed forms") {
  const double pi = std::numbers::pi;
  CHECK(std::abs(bessel_j(BesselOrder::half_integer(0), pi)) <= 1e-15);
  for (double x : {0.001, 0.3, 1.0, 2.5, 7.0, 30.0, 150.0, 900.0, 9999.0}) {
    INFO(x);
    const double j_half = std::sqrt(2.0 / (pi * x)) * std::sin(x);
    // The closed form cancels badly for small x; the series does not.
    const double j_3half = x < 1.0 ? static_cast<double>(series_j(BesselOrder::half_integer(1), x))
                                   : std::sqrt(2.0 / (pi * x)) * (std::sin(x) / x - std::cos(x));
    CHECK(std::abs(bessel_j(BesselOrder::half_integer(0), x) - j_half) <= 1e-13 * std::abs(j_half) + 1e-16);
    CHECK(std::abs(bessel_j(BesselOrder::half_integer(1), x) - j_3half) <= 1e-12 * std::abs(j_3half) + 1e-16);
  }
  CHECK(rel_diff(bessel_j(BesselOrder::integer(1), 1e-4), 5e-5) <= 1e-8);
  CHECK(std::abs(bessel_j(BesselOrder::integer(0), 2.404825557695773)) <= 1e-12);
}

TEST_CASE("bessel_j against the power series") {
  int compared = 0;
  for (unsigned twice = 0; twice <= 40; ++twice) {
    const BesselOrder nu{twice};
    for (double x = 0.05; x <= 12.0; x += 0.37) {
      const long double ref = series_j(nu, x);
      // Relative accuracy is only meaningful away from zeros.
      if (std::abs(ref) < 1e-3L || std::abs(ref) < 1e-280L) continue;
      INFO("nu = " << nu.value() << ", x = " << x);
      CHECK(rel_diff(bessel_j(nu, x), static_cast<double>(ref)) <= 1e-12);
      ++compared;
    }
  }
  CHECK(compared > 700);
}

TEST_CASE("bessel_j large orders and arguments") {
  // Wronskian-type identity J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu.
  for (unsigned twice : {2u, 3u, 41u, 200u, 401u, 998u}) {
    for (double x : {0.5, 10.0, 300.0, 555.5, 5000.0}) {
      INFO("2nu = " << twice << ", x = " << x);
      const double nu = twice / 2.0;
      const double jm = bessel_j({twice - 2}, x);
      const double j = bessel_j({twice}, x);
      const double jp = bessel_j({twice + 2}, x);
      const double scale = std::max({std::abs(jm), std::abs(jp), std::abs(2 * nu / x * j)});
      if (scale < 1e-280) continue;
      CHECK(std::abs(jm + jp - 2 * nu / x * j) <= 1e-11 * scale);
    }
  }
  // Underflow region stays finite and tiny.
  const double tiny = bessel_j(BesselOrder::integer(500), 1e-3);
  CHECK(std::isfinite(tiny));
  CHECK(std::abs(tiny) < 1e-280);
}

TEST_CASE("bessel_j domain") {
  CHECK(code_of([] { bessel_j(BesselOrder::integer(0), 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { bessel_j(BesselOrder::integer(0), -1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { bessel_j(BesselOrder::integer(0), 2e4); }) == ErrorCode::DomainError);
  CHECK(code_of([] { bessel_j(BesselOrder{1001}, 1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { bessel_zero(BesselOrder::integer(0), 0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { tan_fixed_point(0); }) == ErrorCode::DomainError);
}

TEST_CASE("bessel_zero reference values") {
  CHECK(std::abs(bessel_zero(BesselOrder::integer(0), 1) - 2.404825557695773) <= 1e-11 * 2.4);
  CHECK(std::abs(bessel_zero(BesselOrder::integer(1), 1) - 3.831705970207512) <= 1e-11 * 3.8);
  for (std::size_t k = 1; k <= 200; ++k) {
    const double expected = static_cast<double>(k) * std::numbers::pi;
    CHECK(rel_diff(bessel_zero(BesselOrder::half_integer(0), k), expected) <= 1e-12);
  }
}

TEST_CASE("bessel_zero against the series oracle") {
  for (unsigned twice = 0; twice <= 12; ++twice) {
    for (int k = 1; k <= 3; ++k) {
      const long double ref = series_zero({twice}, k);
      if (ref > 12.0L) continue;
      INFO("nu = " << twice / 2.0 << ", k = " << k);
      CHECK(std::abs(bessel_zero({twice}, k) - static_cast<double>(ref)) <=
            1e-11 * static_cast<double>(ref));
    }
  }
}

TEST_CASE("zeros: residual, monotone in nu, interlacing") {
  std::vector<std::vector<double>> table(41);
  for (unsigned twice = 0; twice <= 40; ++twice) {
    for (std::size_t k = 1; k <= 21; ++k) table[twice].push_back(bessel_zero({twice}, k));
  }
  for (unsigned twice = 0; twice <= 40; ++twice) {
    const BesselOrder nu{twice};
    for (std::size_t k = 0; k < 20; ++k) {
      INFO("nu = " << nu.value() << ", k = " << k + 1);
      CHECK(std::abs(bessel_j(nu, table[twice][k])) <= 1e-10);
      CHECK(table[twice][k] < table[twice][k + 1]);
      if (twice >= 1) CHECK(table[twice][k] >= table[twice - 1][k]);
      if (twice + 2 <= 40) {
        CHECK(table[twice][k] < table[twice + 2][k]);
        CHECK(table[twice + 2][k] < table[twice][k + 1]);
      }
    }
  }
}

TEST_CASE("bessel_zero agrees between the asymptotic and scanning paths") {
  // Large k uses the asymptotic start; bessel_zeros always scans.
  for (unsigned twice : {0u, 1u, 4u, 9u, 30u, 201u, 640u, 1000u}) {
    const std::vector<double> scanned = bessel_zeros({twice}, twice / 2.0 + 400.0);
    REQUIRE(scanned.size() > 50);
    for (std::size_t k = 1; k <= scanned.size(); k += 7) {
      INFO("2nu = " << twice << ", k = " << k);
      CHECK(std::abs(bessel_zero({twice}, k) - scanned[k - 1]) <= 1e-11 * scanned[k - 1]);
    }
  }
  const double big = bessel_zero(BesselOrder::integer(0), 100000);
  CHECK(rel_diff(big, (100000 - 0.25) * std::numbers::pi + 1.0 / (8 * (100000 - 0.25) * std::numbers::pi)) <= 1e-12);
}

TEST_CASE("bessel_zeros batch") {
  const std::vector<double> z = bessel_zeros(BesselOrder::half_integer(0), 10.0);
  REQUIRE(z.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(rel_diff(z[k], (k + 1) * std::numbers::pi) <= 1e-12);
  CHECK(bessel_zeros(BesselOrder::integer(5), 5.0).empty());
  const std::vector<double> high = bessel_zeros(BesselOrder::integer(500), 560.0);
  REQUIRE(!high.empty());
  CHECK(high.front() > 500.0);
  CHECK(rel_diff(high.front(), bessel_zero(BesselOrder::integer(500), 1)) <= 1e-12);
}

TEST_CASE("tan_fixed_point") {
  CHECK(std::abs(tan_fixed_point(1) - 4.493409457909064) <= 1e-12 * 4.5);
  CHECK(std::abs(tan_fixed_point(2) - 7.725251836937707) <= 1e-12 * 7.8);
  for (std::size_t m = 1; m <= 100; ++m) {
    const double t = tan_fixed_point(m);
    CHECK(t > m * std::numbers::pi);
    CHECK(t < (2 * m + 1) * std::numbers::pi / 2);
    CHECK(rel_diff(t, tan_oracle(static_cast<int>(m))) <= 1e-12);
  }
}

TEST_CASE("roots of tan t = t are the zeros of J_{3/2}") {
  for (std::size_t m = 1; m <= 50; ++m) {
    CHECK(rel_diff(tan_fixed_point(m), bessel_zero(BesselOrder::half_integer(1), m)) <= 1e-11);
  }
}
