#pragma once

// The `krein` command line: parse, execute, emit.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "krein/exact_spectra.hpp"
#include "krein/spectral_analysis.hpp"
#include "krein/tolerance.hpp"

namespace krein::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kVerificationFailed = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct Command {
  std::string verb;    // exact | discrete | verify | weyl
  std::string target;  // interval | ball | radial | suite name; empty for weyl
  std::string echo;    // the arguments joined by spaces

  Format format = Format::Json;
  std::string output;  // empty: standard output
  bool timing = true;
  ToleranceProfile tolerances;

  double a = 0.0;
  double b = 1.0;
  std::optional<std::size_t> count;
  std::optional<double> lambda_max;
  Realization which = Realization::Krein;
  unsigned dim = 2;
  unsigned ell = 0;
  double radius = 1.0;
  std::size_t points = 0;
  std::optional<double> potential_const;
  std::string potential_csv;
  std::uint64_t seed = 0;
  std::size_t trials = 10;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

// Throws UsageError. `profile_env` is the value of KREIN_TOL_PROFILE, if set.
Command parse(const std::vector<std::string>& args, const char* profile_env = nullptr);

struct RunReport {
  std::string command;
  std::string version;
  ToleranceProfile tolerances;
  std::optional<double> wall_ms;

  std::optional<KernelDimension> kernel;
  std::optional<std::vector<SpectrumEntry>> eigenvalues;
  std::optional<CountingFunction> counting;
  std::vector<InequalityReport> reports;
  std::optional<WeylFit> fit;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid_points;

  bool verification_failed() const;
};

// Throws krein::Error on numerical or input failures.
RunReport execute(const Command& cmd);

// JSON, or CSV with a '#' header echoing the command. Numbers keep full
// double precision.
void emit(const RunReport& report, Format format, std::ostream& out);

// The whole pipeline with exit codes; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const char* profile_env = nullptr);

}  // namespace krein::cli
