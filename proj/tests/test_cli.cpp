#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace krein::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args, const char* profile = nullptr) {
  std::ostringstream out, err;
  const int code = run(args, out, err, profile);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("parse fills the command") {
  const Command c = parse({"exact", "interval", "--a", "0", "--b", "2", "--count", "4", "--which", "dirichlet"});
  CHECK(c.verb == "exact");
  CHECK(c.target == "interval");
  CHECK(c.b == 2.0);
  CHECK(*c.count == 4);
  CHECK(c.which == krein::Realization::Dirichlet);
  CHECK(c.format == Format::Json);
  CHECK(c.timing);
  CHECK(c.tolerances.name == "default");

  const Command w = parse({"weyl", "--dim", "3", "--lambda-max", "2000", "--window", "100,2000", "--format", "csv"});
  CHECK(w.verb == "weyl");
  CHECK(w.window_lo == 100.0);
  CHECK(w.window_hi == 2000.0);
  CHECK(w.format == Format::Csv);

  // global options may come before or after the subcommand
  CHECK(parse({"--no-timing", "verify", "all"}).timing == false);
  CHECK(parse({"verify", "all", "--no-timing"}).timing == false);
  CHECK(parse({"verify", "weyl"}, "strict").tolerances.name == "strict");
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse({}), UsageError);
  CHECK_THROWS_AS(parse({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse({"exact", "interval", "--a", "0", "--b", "1"}), UsageError);
  CHECK_THROWS_AS(parse({"exact", "interval", "--count", "3", "--lambda-max", "9"}), UsageError);
  CHECK_THROWS_AS(parse({"exact", "interval", "--a", "2", "--b", "1", "--count", "3"}), UsageError);
  CHECK_THROWS_AS(parse({"exact", "ball", "--dim", "1", "--lambda-max", "9"}), UsageError);
  CHECK_THROWS_AS(parse({"exact", "ball", "--dim", "2", "--lambda-max", "9", "--which", "neumann"}), UsageError);
  CHECK_THROWS_AS(parse({"verify", "everything"}), UsageError);
  CHECK_THROWS_AS(parse({"weyl", "--dim", "2", "--lambda-max", "100", "--window", "10,200"}), UsageError);
  CHECK_THROWS_AS(parse({"weyl", "--dim", "2", "--lambda-max", "100", "--window", "10"}), UsageError);
  CHECK_THROWS_AS(parse({"discrete", "interval", "--points", "4"}), UsageError);
  CHECK_THROWS_AS(parse({"discrete", "interval", "--points", "20", "--potential-const", "1", "--potential-csv", "v.csv"}),
                  UsageError);
  CHECK_THROWS_AS(parse({"verify", "all"}, "loose"), UsageError);
  CHECK_NOTHROW(parse({"verify", "all"}, "default"));
  CHECK_NOTHROW(parse({"verify", "all"}, ""));

  const Outcome o = invoke({"exact", "ball", "--dim", "1", "--lambda-max", "9"});
  CHECK(o.code == kUsage);
  CHECK(o.out.empty());
  CHECK(o.err.find("error:") == 0);
}

TEST_CASE("help exits cleanly") {
  const Outcome o = invoke({"--help"});
  CHECK(o.code == kOk);
  CHECK(o.out.find("verify") != std::string::npos);
}

TEST_CASE("exact interval JSON") {
  const Outcome o = invoke({"exact", "interval", "--a", "0", "--b", "1", "--count", "3", "--which", "dirichlet"});
  REQUIRE(o.code == kOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["kernel_dimension"] == 0);
  REQUIRE(j["eigenvalues"].size() == 3);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(j["eigenvalues"][k]["value"].get<double>() - pi2 * (k + 1) * (k + 1)) <= 1e-10 * pi2 * 9);
    CHECK(j["eigenvalues"][k]["multiplicity"] == 1);
  }
  CHECK(j["meta"].contains("wall_ms"));
  CHECK(j["meta"]["tolerances"]["name"] == "default");
  CHECK(j["meta"].contains("version"));

  const auto k = nlohmann::json::parse(invoke({"exact", "interval", "--count", "2"}).out);
  CHECK(k["kernel_dimension"] == 2);
}

TEST_CASE("ball Krein kernel is infinite") {
  const Outcome o = invoke({"exact", "ball", "--dim", "2", "--lambda-max", "50", "--which", "krein"});
  REQUIRE(o.code == kOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["kernel_dimension"] == "infinite");
  CHECK(!j["eigenvalues"].empty());
}

TEST_CASE("CSV round trip is exact") {
  const std::vector<std::string> base{"exact", "ball", "--dim", "3", "--lambda-max", "200", "--which", "dirichlet"};
  std::vector<std::string> csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  const Outcome c = invoke(csv_args);
  const Outcome j = invoke(base);
  REQUIRE(c.code == kOk);
  REQUIRE(j.code == kOk);
  CHECK(c.out.rfind("# krein exact ball", 0) == 0);
  const auto rows = csv_rows(c.out);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == std::vector<std::string>{"lambda", "multiplicity"});
  const auto ev = nlohmann::json::parse(j.out)["eigenvalues"];
  REQUIRE(rows.size() - 1 == ev.size());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][0]) == ev[i - 1]["value"].get<double>());
    CHECK(std::stoul(rows[i][1]) == ev[i - 1]["multiplicity"].get<unsigned long>());
  }
}

TEST_CASE("weyl CSV lists the counting function") {
  const Outcome o = invoke({"weyl", "--dim", "2", "--lambda-max", "1000", "--window", "100,1000", "--format", "csv"});
  REQUIRE(o.code == kOk);
  const auto rows = csv_rows(o.out);
  CHECK(rows[0] == std::vector<std::string>{"lambda", "count"});
  unsigned long prev = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const unsigned long c = std::stoul(rows[i][1]);
    CHECK(c > prev);
    prev = c;
  }
  const auto j = nlohmann::json::parse(
      invoke({"weyl", "--dim", "2", "--lambda-max", "1000", "--window", "100,1000"}).out);
  CHECK(j["fit"]["n"] == 2);
  CHECK(std::abs(j["fit"]["c_lead"].get<double>() - 0.25) < 0.01);
}

TEST_CASE("no-timing output is byte identical") {
  const std::vector<std::string> args{"verify", "extension-core", "--seed", "7", "--trials", "2", "--no-timing"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("wall_ms") == std::string::npos);
  CHECK(nlohmann::json::parse(a.out)["meta"]["seed"] == 7);
}

TEST_CASE("verify extension-core passes for seed 0") {
  const Outcome o = invoke({"verify", "extension-core", "--seed", "0", "--trials", "10"});
  CHECK(o.code == kOk);
  const auto j = nlohmann::json::parse(o.out);
  REQUIRE(j["reports"].size() == 6);
  for (const auto& r : j["reports"]) CHECK_MESSAGE(r["satisfied"].get<bool>(), r["name"]);
}

TEST_CASE("verify inequalities and weyl pass") {
  for (const char* suite : {"inequalities", "weyl"}) {
    const Outcome o = invoke({"verify", suite, "--format", "csv"});
    CHECK(o.code == kOk);
    const auto rows = csv_rows(o.out);
    CHECK(rows[0] == std::vector<std::string>{"name", "satisfied", "margin"});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK_MESSAGE(rows[i][1] == "true", rows[i][0]);
  }
}

TEST_CASE("critical channel is a usage error") {
  const Outcome o = invoke({"discrete", "radial", "--dim", "2", "--ell", "0", "--bc", "krein", "--points", "100"});
  CHECK(o.code == kUsage);
  CHECK(o.err.find("UnsupportedChannel") != std::string::npos);
  CHECK(invoke({"discrete", "radial", "--dim", "2", "--ell", "0", "--bc", "dirichlet", "--points", "100"}).code == kUsage);
  CHECK(invoke({"discrete", "radial", "--dim", "2", "--ell", "1", "--bc", "krein", "--points", "100"}).code == kOk);
}

TEST_CASE("discrete runs record the grid") {
  const Outcome o = invoke({"discrete", "radial", "--dim", "3", "--ell", "1", "--bc", "krein", "--points", "200",
                            "--count", "3"});
  REQUIRE(o.code == kOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["meta"]["grid_points"] == 200);
  CHECK(j["eigenvalues"].size() == 3);

  const auto d = nlohmann::json::parse(
      invoke({"discrete", "interval", "--points", "60", "--count", "2", "--potential-const", "3"}).out);
  CHECK(d["kernel_dimension"] == 2);
  CHECK(d["eigenvalues"].size() == 2);
}

TEST_CASE("potential CSV files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "krein_cli_potential.csv";
  {
    std::ofstream f(good);
    for (int i = 0; i < 20; ++i) f << 1.5 << '\n';
  }
  const auto from_file = nlohmann::json::parse(invoke({"discrete", "interval", "--points", "20", "--count", "2",
                                                       "--potential-csv", good.string(), "--no-timing"})
                                                   .out);
  const auto from_const = nlohmann::json::parse(invoke({"discrete", "interval", "--points", "20", "--count", "2",
                                                        "--potential-const", "1.5", "--no-timing"})
                                                    .out);
  CHECK(from_file["eigenvalues"] == from_const["eigenvalues"]);

  const auto bad = dir / "krein_cli_bad.csv";
  {
    std::ofstream f(bad);
    f << "1.0\nbanana\n";
  }
  const Outcome parse_fail =
      invoke({"discrete", "interval", "--points", "20", "--potential-csv", bad.string()});
  CHECK(parse_fail.code == kUsage);
  CHECK(parse_fail.err.find("line 2") != std::string::npos);

  const Outcome missing =
      invoke({"discrete", "interval", "--points", "20", "--potential-csv", (dir / "no_such_file.csv").string()});
  CHECK(missing.code == kNumerical);

  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "krein_cli_out.json";
  const Outcome o = invoke({"exact", "interval", "--count", "2", "--output", path.string(), "--no-timing"});
  CHECK(o.code == kOk);
  CHECK(o.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(nlohmann::json::parse(ss.str())["eigenvalues"].size() == 2);
  std::filesystem::remove(path);

  CHECK(invoke({"exact", "interval", "--count", "2", "--output", "/nonexistent/dir/x.json"}).code == kNumerical);
}

TEST_CASE("failed verification maps to exit code 3") {
  RunReport r;
  r.reports.push_back({"ok", true, false, 1.0, {}});
  CHECK_FALSE(r.verification_failed());
  r.reports.push_back({"broken", false, false, -1.0, {0}});
  CHECK(r.verification_failed());
}

TEST_CASE("CSV quotes report names with commas") {
  RunReport r;
  r.command = "verify weyl";
  r.reports.push_back({"a, b", true, false, 0.5, {}});
  r.reports.push_back({"say \"hi\"", true, false, 0.25, {}});
  std::ostringstream out;
  emit(r, Format::Csv, out);
  CHECK(out.str() == "# krein verify weyl\nname,satisfied,margin\n\"a, b\",true,0.5\n\"say \"\"hi\"\"\",true,0.25\n");
}

TEST_CASE("JSON numbers carry 17 significant digits") {
  RunReport r;
  r.command = "x";
  r.eigenvalues = std::vector<krein::SpectrumEntry>{{0.1, 1}};
  std::ostringstream out;
  emit(r, Format::Json, out);
  CHECK(out.str().find("0.10000000000000001") != std::string::npos);
  CHECK(nlohmann::json::parse(out.str())["eigenvalues"][0]["value"].get<double>() == 0.1);
}
