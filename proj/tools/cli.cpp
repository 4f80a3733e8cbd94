#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "krein/discretize.hpp"
#include "krein/error.hpp"
#include "krein/linalg.hpp"
#include "suites.hpp"

#ifndef KREIN_VERSION
#define KREIN_VERSION "0.0.0"
#endif

namespace krein::cli {

namespace {

// --help output; not an error.
struct HelpRequested {
  std::string text;
};

Realization realization_of(const std::string& s) {
  return s == "dirichlet" ? Realization::Dirichlet : Realization::Krein;
}

ToleranceProfile profile_of(const char* env) {
  const std::string name = env == nullptr ? "" : env;
  if (name.empty() || name == "default") return ToleranceProfile::standard();
  if (name == "strict") return ToleranceProfile::strict();
  throw UsageError("KREIN_TOL_PROFILE must be 'strict' or 'default', got '" + name + "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + '"';
}

nlohmann::ordered_json tolerances_json(const ToleranceProfile& t) {
  return {{"name", t.name},
          {"cholesky_pivot", t.cholesky_pivot},
          {"psd_clamp", t.psd_clamp},
          {"max_ql_iterations", t.max_ql_iterations},
          {"orthonormality", t.orthonormality},
          {"rank", t.rank},
          {"krein_mismatch", t.krein_mismatch},
          {"extension_residual", t.extension_residual},
          {"symmetry", t.symmetry},
          {"bessel_merge", t.bessel_merge},
          {"breakpoint_offset", t.breakpoint_offset},
          {"tie", t.tie}};
}

// nlohmann's dump prints the shortest round-trip form; floats here get %.17g.
void write_json(const nlohmann::ordered_json& j, std::ostream& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  if (j.is_object() && !j.empty()) {
    out << "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      out << (first ? "" : ",\n") << pad << nlohmann::json(key).dump() << ": ";
      write_json(value, out, depth + 1);
      first = false;
    }
    out << '\n' << close << '}';
  } else if (j.is_array() && !j.empty()) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << (i ? ",\n" : "") << pad;
      write_json(j[i], out, depth + 1);
    }
    out << '\n' << close << ']';
  } else if (j.is_number_float()) {
    const double x = j.get<double>();
    out << (std::isfinite(x) ? number(x) : "null");
  } else {
    out << j.dump();
  }
}

Spectrum first_values(const std::vector<double>& values, std::size_t count) {
  Spectrum s;
  for (std::size_t j = 0; j < count; ++j) s.entries.push_back({values[j], 1});
  s.complete_below = values[count - 1];
  return s;
}

}  // namespace

bool RunReport::verification_failed() const {
  return std::any_of(reports.begin(), reports.end(), [](const InequalityReport& r) { return !r.satisfied; });
}

Command parse(const std::vector<std::string>& args, const char* profile_env) {
  Command cmd;
  for (const std::string& a : args) cmd.echo += (cmd.echo.empty() ? "" : " ") + a;

  CLI::App app{"Krein and Dirichlet Laplacian spectra", "krein"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  std::string format = "json";
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cmd.output, "write to this file instead of standard output");
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "omit wall time so output is byte-reproducible");

  std::string which = "krein";
  const auto which_check = CLI::IsMember({"dirichlet", "krein"});

  CLI::App* exact = app.add_subcommand("exact", "closed-form spectra");
  exact->require_subcommand(1, 1);
  CLI::App* exact_interval = exact->add_subcommand("interval", "-d^2/dx^2 on (a, b)");
  exact_interval->add_option("--a", cmd.a);
  exact_interval->add_option("--b", cmd.b);
  exact_interval->add_option("--count", cmd.count, "number of nonzero eigenvalues");
  exact_interval->add_option("--lambda-max", cmd.lambda_max, "all eigenvalues up to this value");
  exact_interval->add_option("--which", which)->check(which_check);
  CLI::App* exact_ball = exact->add_subcommand("ball", "-Delta on the ball of radius R in R^n");
  exact_ball->add_option("--dim", cmd.dim)->required();
  exact_ball->add_option("--radius", cmd.radius);
  exact_ball->add_option("--lambda-max", cmd.lambda_max)->required();
  exact_ball->add_option("--which", which)->check(which_check);

  CLI::App* discrete = app.add_subcommand("discrete", "finite-difference spectra");
  discrete->require_subcommand(1, 1);
  CLI::App* disc_interval = discrete->add_subcommand("interval", "clamped grid model on (a, b)");
  disc_interval->add_option("--a", cmd.a);
  disc_interval->add_option("--b", cmd.b);
  disc_interval->add_option("--points", cmd.points, "interior grid points")->required();
  disc_interval->add_option("--count", cmd.count);
  disc_interval->add_option("--which", which)->check(which_check);
  auto* pc = disc_interval->add_option("--potential-const", cmd.potential_const);
  auto* pf = disc_interval->add_option("--potential-csv", cmd.potential_csv);
  pc->excludes(pf);
  CLI::App* radial = discrete->add_subcommand("radial", "one angular channel of the ball");
  radial->add_option("--dim", cmd.dim)->required();
  radial->add_option("--ell", cmd.ell)->required();
  radial->add_option("--bc", which)->required()->check(which_check);
  radial->add_option("--points", cmd.points)->required();
  radial->add_option("--radius", cmd.radius);
  radial->add_option("--count", cmd.count);

  CLI::App* verify = app.add_subcommand("verify", "property suites");
  verify->add_option("suite", cmd.target)
      ->required()
      ->check(CLI::IsMember({"extension-core", "inequalities", "weyl", "all"}));
  verify->add_option("--seed", cmd.seed);
  verify->add_option("--trials", cmd.trials);

  CLI::App* weyl = app.add_subcommand("weyl", "two-term Weyl fit on a ball");
  weyl->add_option("--dim", cmd.dim)->required();
  weyl->add_option("--radius", cmd.radius);
  weyl->add_option("--lambda-max", cmd.lambda_max)->required();
  std::vector<double> window;
  weyl->add_option("--window", window, "lo,hi")->required()->delimiter(',')->expected(2);
  weyl->add_option("--which", which)->check(which_check);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cmd.format = format == "csv" ? Format::Csv : Format::Json;
  cmd.timing = !no_timing;
  cmd.which = realization_of(which);
  cmd.tolerances = profile_of(profile_env);

  if (exact->parsed()) {
    cmd.verb = "exact";
    if (exact_interval->parsed()) {
      cmd.target = "interval";
      require(cmd.a < cmd.b, "exact interval: need --a < --b");
      require(cmd.count.has_value() != cmd.lambda_max.has_value(),
              "exact interval: give exactly one of --count and --lambda-max");
      require(!cmd.count || *cmd.count > 0, "exact interval: --count must be positive");
    } else {
      cmd.target = "ball";
      require(cmd.dim >= 2, "exact ball: --dim must be at least 2");
      require(cmd.radius > 0, "exact ball: --radius must be positive");
    }
    require(!cmd.lambda_max || *cmd.lambda_max > 0, "--lambda-max must be positive");
  } else if (discrete->parsed()) {
    cmd.verb = "discrete";
    require(cmd.points >= 8, "discrete: --points must be at least 8");
    if (disc_interval->parsed()) {
      cmd.target = "interval";
      require(cmd.a < cmd.b, "discrete interval: need --a < --b");
      if (!cmd.count) cmd.count = std::min<std::size_t>(10, cmd.points - 2);
      require(*cmd.count > 0 && *cmd.count <= cmd.points - 2,
              "discrete interval: --count must be between 1 and points - 2");
      require(!cmd.potential_const || *cmd.potential_const >= 0,
              "discrete interval: --potential-const must be nonnegative");
    } else {
      cmd.target = "radial";
      require(cmd.dim >= 2, "discrete radial: --dim must be at least 2");
      require(cmd.radius > 0, "discrete radial: --radius must be positive");
      if (!cmd.count) cmd.count = 5;
      require(*cmd.count > 0 && *cmd.count < cmd.points, "discrete radial: --count must be between 1 and points - 1");
    }
  } else if (verify->parsed()) {
    cmd.verb = "verify";
    require(cmd.trials > 0, "verify: --trials must be positive");
  } else {
    cmd.verb = "weyl";
    require(cmd.dim >= 2, "weyl: --dim must be at least 2");
    require(cmd.radius > 0, "weyl: --radius must be positive");
    cmd.window_lo = window[0];
    cmd.window_hi = window[1];
    require(cmd.window_lo > 0 && cmd.window_lo < cmd.window_hi && cmd.window_hi <= *cmd.lambda_max,
            "weyl: need 0 < lo < hi <= lambda-max in --window");
  }
  return cmd;
}

RunReport execute(const Command& cmd) {
  RunReport rep;
  rep.command = cmd.echo;
  rep.version = KREIN_VERSION;
  rep.tolerances = cmd.tolerances;

  auto set_spectrum = [&](const Spectrum& s) {
    rep.kernel = s.kernel;
    rep.eigenvalues = s.entries;
  };

  if (cmd.verb == "exact" && cmd.target == "interval") {
    const IntervalSpec spec{cmd.a, cmd.b};
    if (cmd.count) {
      set_spectrum(cmd.which == Realization::Krein ? interval_krein(spec, *cmd.count)
                                                   : interval_dirichlet(spec, *cmd.count));
    } else {
      set_spectrum(interval_spectrum(spec, cmd.which, *cmd.lambda_max));
    }
  } else if (cmd.verb == "exact") {
    set_spectrum(ball_spectrum({cmd.dim, cmd.radius}, cmd.which, *cmd.lambda_max));
  } else if (cmd.verb == "discrete" && cmd.target == "interval") {
    const Grid1D grid = make_grid(cmd.a, cmd.b, cmd.points);
    PotentialSpec v = PotentialSpec::zero();
    if (cmd.potential_const) v = PotentialSpec::constant(*cmd.potential_const);
    if (!cmd.potential_csv.empty()) v = read_potential_csv(std::filesystem::path(cmd.potential_csv), cmd.points);
    const ExtensionModel model = interval_model(grid, v);
    if (cmd.which == Realization::Krein) {
      set_spectrum(discrete_krein_spectrum(model, *cmd.count));
    } else {
      set_spectrum(first_values(sym_eigenvalues(model.a(), cmd.tolerances), *cmd.count));
    }
    rep.grid_points = cmd.points;
  } else if (cmd.verb == "discrete") {
    set_spectrum(radial_spectrum({cmd.dim, cmd.ell, cmd.radius, cmd.points, cmd.which}, *cmd.count));
    rep.grid_points = cmd.points;
  } else if (cmd.verb == "verify") {
    auto append = [&](std::vector<InequalityReport> rs) {
      rep.reports.insert(rep.reports.end(), rs.begin(), rs.end());
    };
    if (cmd.target == "extension-core" || cmd.target == "all") {
      append(extension_suite(cmd.seed, cmd.trials, cmd.tolerances));
      rep.seed = cmd.seed;
    }
    if (cmd.target == "inequalities" || cmd.target == "all") append(inequality_suite());
    if (cmd.target == "weyl" || cmd.target == "all") append(weyl_suite());
  } else {
    const CountingFunction n = counting_from_spectrum(ball_spectrum({cmd.dim, cmd.radius}, cmd.which, *cmd.lambda_max));
    rep.fit = weyl_fit(n, cmd.dim, cmd.window_lo, cmd.window_hi,
                       two_term_ball_coefficients(cmd.dim, cmd.radius, cmd.which));
    rep.counting = n;
  }
  return rep;
}

void emit(const RunReport& report, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    out << "# krein " << report.command << '\n';
    if (report.eigenvalues) {
      out << "lambda,multiplicity\n";
      for (const SpectrumEntry& e : *report.eigenvalues) out << number(e.value) << ',' << e.multiplicity << '\n';
    } else if (report.counting) {
      out << "lambda,count\n";
      for (const auto& [x, c] : report.counting->breakpoints()) out << number(x) << ',' << c << '\n';
    } else {
      out << "name,satisfied,margin\n";
      for (const InequalityReport& r : report.reports)
        out << csv_field(r.name) << ',' << (r.satisfied ? "true" : "false") << ',' << number(r.margin) << '\n';
    }
    return;
  }

  nlohmann::ordered_json j;
  j["command"] = report.command;
  if (report.kernel) {
    if (report.kernel->is_infinite()) {
      j["kernel_dimension"] = "infinite";
    } else {
      j["kernel_dimension"] = report.kernel->value();
    }
  }
  if (report.eigenvalues) {
    j["eigenvalues"] = nlohmann::ordered_json::array();
    for (const SpectrumEntry& e : *report.eigenvalues)
      j["eigenvalues"].push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
  }
  if (!report.reports.empty()) {
    j["reports"] = nlohmann::ordered_json::array();
    for (const InequalityReport& r : report.reports) {
      nlohmann::ordered_json item{{"name", r.name}, {"satisfied", r.satisfied}, {"margin", r.margin}};
      if (r.inconclusive) item["inconclusive"] = true;
      if (!r.witnesses.empty()) item["witnesses"] = r.witnesses;
      j["reports"].push_back(item);
    }
  }
  if (report.fit) {
    const WeylFit& f = *report.fit;
    j["fit"] = {{"n", f.n},
                {"c_lead", f.c_lead},
                {"c_second", f.c_second},
                {"c_third", f.c_third},
                {"analytic_lead", f.analytic_lead},
                {"analytic_second", f.analytic_second},
                {"window", {f.window_lo, f.window_hi}},
                {"samples", f.samples},
                {"residual_sup", f.residual_sup},
                {"remainder_slope", f.remainder_slope}};
  }
  nlohmann::ordered_json meta;
  meta["version"] = report.version;
  if (report.seed) meta["seed"] = *report.seed;
  if (report.grid_points) meta["grid_points"] = *report.grid_points;
  meta["tolerances"] = tolerances_json(report.tolerances);
  if (report.wall_ms) meta["wall_ms"] = *report.wall_ms;
  j["meta"] = meta;
  write_json(j, out, 0);
  out << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const char* profile_env) {
  try {
    const Command cmd = parse(args, profile_env);
    const auto start = std::chrono::steady_clock::now();
    RunReport report = execute(cmd);
    if (cmd.timing) {
      report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    if (cmd.output.empty()) {
      emit(report, cmd.format, out);
    } else {
      std::ofstream file(cmd.output);
      if (!file) fail(ErrorCode::IoError, "cannot write " + cmd.output);
      emit(report, cmd.format, file);
      if (!file.flush()) fail(ErrorCode::IoError, "write failed: " + cmd.output);
    }
    return report.verification_failed() ? kVerificationFailed : kOk;
  } catch (const HelpRequested& h) {
    out << h.text;
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::UnsupportedChannel:
      case ErrorCode::InvalidArgument:
      case ErrorCode::ParseError:
        return kUsage;
      default:
        return kNumerical;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace krein::cli
