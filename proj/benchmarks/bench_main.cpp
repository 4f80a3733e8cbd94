#include <benchmark/benchmark.h>

#include "krein/discretize.hpp"
#include "krein/exact_spectra.hpp"
#include "krein/extension.hpp"
#include "krein/linalg.hpp"
#include "krein/special_functions.hpp"
#include "krein/spectral_analysis.hpp"

namespace {

void BM_SymEigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const krein::ExtensionModel model = krein::random_model(1, n, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(krein::sym_eigenvalues(model.a()));
}
BENCHMARK(BM_SymEigenvalues)->Arg(16)->Arg(64)->Arg(256);

void BM_KreinExtension(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const krein::ExtensionModel model = krein::random_model(2, n, n - 4);
  for (auto _ : state) benchmark::DoNotOptimize(krein::krein_extension(model));
}
BENCHMARK(BM_KreinExtension)->Arg(8)->Arg(32)->Arg(128);

void BM_BesselZero(benchmark::State& state) {
  const krein::BesselOrder nu{static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(krein::bessel_zero(nu, 50));
}
BENCHMARK(BM_BesselZero)->Arg(0)->Arg(3)->Arg(40);

void BM_BallSpectrum(benchmark::State& state) {
  const double top = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(krein::ball_spectrum({3, 1.0}, krein::Realization::Krein, top));
}
BENCHMARK(BM_BallSpectrum)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_RadialSpectrum(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(krein::radial_spectrum({3, 1, 1.0, m, krein::Realization::Krein}, 4));
}
BENCHMARK(BM_RadialSpectrum)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_WeylFit(benchmark::State& state) {
  const krein::CountingFunction n =
      krein::counting_from_spectrum(krein::ball_spectrum({2, 1.0}, krein::Realization::Krein, 1e4));
  const auto coeffs = krein::two_term_ball_coefficients(2, 1.0, krein::Realization::Krein);
  for (auto _ : state) benchmark::DoNotOptimize(krein::weyl_fit(n, 2, 1e2, 1e4, coeffs));
}
BENCHMARK(BM_WeylFit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
