#include "suites.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <tuple>

#include "krein/error.hpp"
#include "krein/exact_spectra.hpp"
#include "krein/extension.hpp"
#include "krein/linalg.hpp"
#include "krein/random.hpp"

namespace krein::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Size {
  std::size_t n;
  std::size_t d;
};
constexpr std::array<Size, 3> kSizes{{{8, 5}, {16, 12}, {32, 28}}};
constexpr std::size_t kParametrizationsPerModel = 5;

// Worst values for one model. Residuals: larger is worse. Slacks: smaller is worse.
struct TrialResult {
  double krein_mismatch = kInf;
  double pencil_mismatch = kInf;
  double skinv = kInf;
  double domination_slack = -kInf;
  double ordering_slack = -kInf;
  double unitary = kInf;
};

Matrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

TrialResult run_trial(std::uint64_t model_seed, Size size, const ToleranceProfile& tol) {
  TrialResult r;
  const ExtensionModel model = random_model(model_seed, size.n, size.d, tol);
  const double norm_a = model.a().max_abs();

  const ExtensionResult sk = krein_extension(model, tol);
  const ExtensionResult sf = friedrichs(model);
  r.krein_mismatch = sk.construction_mismatch / norm_a;

  // The top d eigenvalues of the Krein matrix are its nonzero ones.
  const std::vector<double> ev = sym_eigenvalues(sk.matrix, tol);
  const std::vector<double> pencil = buckling_pencil_values(model, tol);
  r.pencil_mismatch = 0.0;
  for (std::size_t j = 0; j < size.d; ++j)
    r.pencil_mismatch = std::max(r.pencil_mismatch, rel_diff(ev[size.n - size.d + j], pencil[j]));
  for (std::size_t j = 0; j < size.n - size.d; ++j)
    r.pencil_mismatch = std::max(r.pencil_mismatch, std::abs(ev[j]) / norm_a);

  const ReducedKrein reduced = reduced_krein(model, tol);
  r.skinv = reduced.skinv_residual;
  const std::vector<double> mu_f = sym_eigenvalues(model.a(), tol);
  const std::vector<double> mu_k = sym_eigenvalues(reduced.matrix, tol);
  r.domination_slack = kInf;
  for (std::size_t j = 0; j < mu_k.size(); ++j)
    r.domination_slack = std::min(r.domination_slack, (mu_k[j] - mu_f[j]) / mu_k[j]);

  SplitMix64 rng(model_seed ^ 0x5DEECE66DULL);
  const Matrix kernel = adjoint_kernel(model);
  const std::size_t def = kernel.cols();
  r.ordering_slack = kInf;
  for (std::size_t t = 0; t < kParametrizationsPerModel; ++t) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * def) % def;
    const Matrix w = kernel * orthonormalize(random_matrix(rng, def, k), tol);
    const std::size_t rank = static_cast<std::size_t>(rng.uniform() * (k + 1)) % (k + 1);
    Matrix b(k, k);
    if (rank > 0) {
      const Matrix g = random_matrix(rng, rank, k);
      b = g.transpose() * g;
    }
    const ExtensionResult p = parametrized_extension(model, w, b, tol);
    for (double a : {0.5, 2.0}) {
      r.ordering_slack = std::min({r.ordering_slack, order_compare(sk, p, a), order_compare(p, sf, a)});
    }
  }

  r.unitary = buckling_analysis(model, tol).residuals.at("unitary_equivalence");
  return r;
}

InequalityReport residual_report(std::string name, const std::vector<TrialResult>& trials,
                                 double TrialResult::*field, double bound) {
  InequalityReport rep;
  rep.name = std::move(name);
  double worst = 0.0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const double v = trials[i].*field;
    worst = std::max(worst, v);
    if (!(v <= bound)) rep.witnesses.push_back(i);
  }
  rep.margin = bound - worst;
  rep.satisfied = rep.witnesses.empty();
  return rep;
}

InequalityReport slack_report(std::string name, const std::vector<TrialResult>& trials,
                              double TrialResult::*field, double floor) {
  InequalityReport rep;
  rep.name = std::move(name);
  rep.margin = kInf;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const double v = trials[i].*field;
    rep.margin = std::min(rep.margin, v);
    if (!(v >= floor)) rep.witnesses.push_back(i);
  }
  rep.satisfied = rep.witnesses.empty();
  return rep;
}

std::vector<InequalityReport> prefixed(const std::string& prefix, std::vector<InequalityReport> rs) {
  for (InequalityReport& r : rs) r.name = prefix + r.name;
  return rs;
}

InequalityReport relative_fit_report(std::string name, double fitted, double analytic, double bound) {
  InequalityReport rep;
  rep.name = std::move(name);
  rep.margin = bound - rel_diff(fitted, analytic);
  rep.satisfied = rep.margin >= 0.0;
  return rep;
}

}  // namespace

std::vector<InequalityReport> extension_suite(std::uint64_t seed, std::size_t trials,
                                              const ToleranceProfile& tol) {
  struct Job {
    std::uint64_t model_seed;
    Size size;
  };
  std::vector<Job> jobs;
  SplitMix64 seeds(seed);
  for (Size s : kSizes)
    for (std::size_t t = 0; t < trials; ++t) jobs.push_back({seeds.next(), s});

  std::vector<TrialResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_trial(jobs[i].model_seed, jobs[i].size, tol);
      } catch (const Error&) {
        results[i] = TrialResult{};  // every check fails for this trial
      }
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  return {
      residual_report("piecewise vs Ando-Nishio Krein", results, &TrialResult::krein_mismatch, 1e-10),
      residual_report("Krein eigenvalues vs buckling pencil", results, &TrialResult::pencil_mismatch, 1e-9),
      residual_report("Krein inverse formula", results, &TrialResult::skinv, 1e-9),
      slack_report("Friedrichs below reduced Krein", results, &TrialResult::domination_slack, -1e-12),
      slack_report("parametrized between Krein and Friedrichs", results, &TrialResult::ordering_slack, -1e-10),
      residual_report("unitary equivalence", results, &TrialResult::unitary, 1e-9),
  };
}

std::vector<InequalityReport> inequality_suite() {
  std::vector<InequalityReport> out;
  for (const auto& [n, top, volume] : {std::tuple{2u, 1e4, std::numbers::pi},
                                       std::tuple{3u, 2000.0, 4.0 * std::numbers::pi / 3.0}}) {
    const std::string prefix = n == 2 ? "disk: " : "3-ball: ";
    const Spectrum k = ball_spectrum({n, 1.0}, Realization::Krein, top);
    const Spectrum d = ball_spectrum({n, 1.0}, Realization::Dirichlet, top);
    for (InequalityReport& r : prefixed(prefix, universal_inequalities(k, d, n, volume, 20))) out.push_back(r);
    InequalityReport dom = universal_inequalities(k, d, n, volume, 200).back();
    dom.name = prefix + "index domination to 200";
    out.push_back(dom);

    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(top * i / 200.0);
    InequalityReport cd = counting_domination(counting_from_spectrum(k), counting_from_spectrum(d), grid);
    cd.name = prefix + cd.name;
    out.push_back(cd);
    for (InequalityReport& r : prefixed(prefix, sandwich_check(n, 1.0, top))) out.push_back(r);
  }
  return out;
}

std::vector<InequalityReport> weyl_suite() {
  std::vector<InequalityReport> out;
  for (const auto& [n, lo, hi, second_bound] : {std::tuple{2u, 1e2, 1e4, 5e-2}, std::tuple{3u, 1e2, 2000.0, 1e-1}}) {
    const std::string prefix = n == 2 ? "disk: " : "3-ball: ";
    const WeylCoefficients a = two_term_ball_coefficients(n, 1.0, Realization::Krein);
    const CountingFunction k = counting_from_spectrum(ball_spectrum({n, 1.0}, Realization::Krein, hi));
    const WeylFit fit = weyl_fit(k, n, lo, hi, a);
    out.push_back(relative_fit_report(prefix + "leading coefficient", fit.c_lead, a.lead, 1e-2));
    out.push_back(relative_fit_report(prefix + "second coefficient", fit.c_second, a.second, second_bound));
  }
  for (unsigned n : {2u, 3u, 4u}) {
    const double vol = unit_ball_volume(n);
    const KozlovCoefficient k = kozlov_coefficient(n, 2, 1, vol);
    InequalityReport eq;
    eq.name = "Kozlov equals Weyl (n = " + std::to_string(n) + ")";
    eq.margin = 0.0 - std::abs(k.value - weyl_leading(n, vol));
    eq.satisfied = eq.margin == 0.0;
    out.push_back(eq);
    InequalityReport quad;
    quad.name = "Kozlov quadrature (n = " + std::to_string(n) + ")";
    quad.margin = 1e-8 - k.self_check;
    quad.satisfied = k.quadrature.has_value() && quad.margin >= 0.0;
    out.push_back(quad);
  }
  return out;
}

}  // namespace krein::cli
