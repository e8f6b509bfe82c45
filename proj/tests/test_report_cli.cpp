#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "minhyp/report.hpp"

using namespace minhyp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

// Every column whose first-row cell parses as a non-integer number needs a
// "_err" sibling.
std::vector<std::string> csv_columns_without_error(const std::string& csv) {
  const auto lines = split(csv, '\n');
  REQUIRE(lines.size() >= 2);
  const auto header = split(lines[0], ',');
  const auto first = split(lines[1], ',');
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& h = header[i];
    if (h.size() > 4 && h.substr(h.size() - 4) == "_err") continue;
    const std::string& cell = first[i];
    char* end = nullptr;
    std::strtod(cell.c_str(), &end);
    const bool numeric = !cell.empty() && *end == '\0';
    const bool integer = cell.find_first_not_of("-0123456789") == std::string::npos;
    if (!numeric || integer) continue;
    bool found = false;
    for (const auto& other : header) found = found || other == h + "_err";
    if (!found) missing.push_back(h);
  }
  return missing;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("minhyp_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 3.141592653589793}) {
    const std::string s = report::format_number(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(report::format_number(INFINITY) == "inf");
  CHECK(report::format_number(-INFINITY) == "-inf");
  CHECK(report::format_number(NAN) == "nan");
}

TEST_CASE("tables, error siblings and schema") {
  report::Table t({"x", "x_err", "y", "label", "k"});
  t.add_row({1.5, 1e-12, 2.0, std::string("a"), 3LL});
  CHECK(report::missing_error_columns(t) == std::vector<std::string>{"y"});
  CHECK(t.to_csv().substr(0, 20) == "x,x_err,y,label,k\n1.");
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  const auto doc = report::document("demo");
  CHECK(doc["schema"] == 1);
  CHECK(doc["kind"] == "demo");
  CHECK(report::dump(doc).back() == '\n');
  CHECK(report::disk_coordinate(2.0) == doctest::Approx(std::tanh(1.0)));
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == cli::ok);
  CHECK(run({}).code == cli::usage);
  CHECK(run({"frobnicate"}).code == cli::usage);
  CHECK(run({"heights", "--n", "two"}).code == cli::usage);
  CHECK(run({"heights", "--n", "1"}).code == cli::usage);
  CHECK(run({"heights", "--a", "-1"}).code == cli::usage);
  CHECK(run({"heights", "--format", "xml"}).code == cli::usage);
  CHECK(run({"check", "--perturb-f", "1e-3", "--format", "csv"}).code == cli::certification_failure);
}

TEST_CASE("check passes and reports schema 1") {
  const Run r = run({"check", "--format", "json"});
  CHECK(r.code == cli::ok);
  const auto j = report::Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["passed"] == true);
}

TEST_CASE("heights: deterministic CSV with error siblings") {
  const Run a = run({"heights", "--n", "3"});
  const Run b = run({"heights", "--n", "3"});
  REQUIRE(a.code == cli::ok);
  CHECK(a.out == b.out);
  CHECK(csv_columns_without_error(a.out).empty());
  const Run j = run({"heights", "--n", "2", "--a", "0.5,1", "--format", "json"});
  CHECK(report::Json::parse(j.out)["schema"] == 1);
}

TEST_CASE("stability, curvature and translation documents") {
  const Run s = run({"stability", "--n", "2", "--a", "1", "--format", "json"});
  CHECK(s.code == cli::ok);
  CHECK(report::Json::parse(s.out)["schema"] == 1);
  for (const char* cmd : {"curvature", "translation"}) {
    const Run r = run({cmd, "--n", "2"});
    CHECK(r.code == cli::ok);
    CHECK(csv_columns_without_error(r.out).empty());
  }
}

TEST_CASE("profile and envelope write CSV and SVG files") {
  const fs::path dir = scratch("profile");
  const Run p = run({"profile", "--n", "2", "--a", "0.5,1", "--out", dir.string()});
  REQUIRE(p.code == cli::ok);
  bool svg = false, csv = false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (ext == ".svg") {
      svg = true;
      std::ifstream in(entry.path());
      std::string head;
      std::getline(in, head);
      CHECK(head.find("<svg") != std::string::npos);
    }
    if (ext == ".csv") {
      csv = true;
      std::ifstream in(entry.path());
      std::stringstream ss;
      ss << in.rdbuf();
      CHECK(csv_columns_without_error(ss.str()).empty());
    }
  }
  CHECK(svg);
  CHECK(csv);

  const fs::path env = scratch("envelope");
  const Run e = run({"envelope", "--n", "2", "--out", env.string()});
  CHECK(e.code == cli::ok);
  bool env_svg = false;
  for (const auto& entry : fs::directory_iterator(env)) env_svg = env_svg || entry.path().extension() == ".svg";
  CHECK(env_svg);
  fs::remove_all(dir);
  fs::remove_all(env);
}
