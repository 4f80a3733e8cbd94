#pragma once

// Property suites behind `krein verify`.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "krein/spectral_analysis.hpp"
#include "krein/tolerance.hpp"

namespace krein::cli {

// Random models at (N, d) in {(8,5), (16,12), (32,28)}, `trials` per size:
// piecewise vs Ando-Nishio Krein, Krein eigenvalues vs pencil values, the
// inverse formula, Friedrichs below Krein per index, parametrized extensions
// between Krein and Friedrichs, and the unitary equivalence of the reduced
// Krein inverse. Trials run on a thread pool; results do not depend on the
// number of threads.
std::vector<InequalityReport> extension_suite(std::uint64_t seed, std::size_t trials,
                                              const ToleranceProfile& tol);

// Universal inequalities, counting domination and the sandwich bounds on the
// disk and the 3-ball.
std::vector<InequalityReport> inequality_suite();

// Two-term fits on the disk and 3-ball against their analytic coefficients,
// and the Kozlov leading-coefficient checks for n = 2, 3, 4.
std::vector<InequalityReport> weyl_suite();

}  // namespace krein::cli
