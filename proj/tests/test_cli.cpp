#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "jchm/error.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "jchm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = jchm::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string s; std::getline(is, s);) v.push_back(s);
  return v;
}

std::string column(const std::string& csv_line, std::size_t index) {
  std::istringstream is(csv_line);
  std::string field;
  for (std::size_t k = 0; k <= index; ++k) std::getline(is, field, ',');
  return field;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("jchm_test_" + name);
}

}  // namespace

TEST_CASE("range parsing") {
  const auto r = jchm::cli::parse_range("-4:-0.2:41", "x-range");
  CHECK(r.lo == -4.0);
  CHECK(r.hi == doctest::Approx(-0.2));
  CHECK(r.n == 41);
  CHECK(jchm::cli::parse_range("0:1", "y-range").n == 0);
  CHECK_THROWS_AS(jchm::cli::parse_range("0", "x-range"), jchm::InvalidParameter);
  CHECK_THROWS_AS(jchm::cli::parse_range("a:b", "x-range"), jchm::InvalidParameter);
  CHECK_THROWS_AS(jchm::cli::parse_range("0:1:0", "x-range"), jchm::InvalidParameter);
}

TEST_CASE("point classification") {
  const auto mi = run({"point", "--l", "2", "--y", "-0.3", "--x", "-4"});
  CHECK(mi.code == 0);
  CHECK(mi.out.find("phase MI:2") != std::string::npos);

  const auto sf = run({"point", "--l", "1", "--y", "-0.7", "--x", "-1.0", "--format", "json"});
  CHECK(sf.code == 0);
  CHECK(sf.out.find("\"phase\": \"SF\"") != std::string::npos);
}

TEST_CASE("invalid parameters exit with code 1 and name the field") {
  const auto r = run({"point", "--l", "2", "--n-max", "1", "--y", "-0.3", "--x", "-4"});
  CHECK(r.code == 1);
  CHECK(r.err.find("n_max") != std::string::npos);

  CHECK(run({"point", "--l", "1", "--x", "-4"}).code == 1);
  CHECK(run({"point", "--l", "9", "--x", "-4", "--y", "0"}).code == 1);
  CHECK(run({"point", "--l", "1", "--x", "-4", "--y", "0", "--format", "xml"}).code == 1);
  CHECK(run({"diagram", "--l", "1", "--x-range", "1:0:3", "--y-range", "0:1:3"}).code == 1);
  CHECK(run({"point", "--bogus"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("diagram writes one header and one row per cell, reproducibly") {
  const std::vector<std::string> args{"diagram", "--l", "1", "--x-range", "-3:-0.5:5", "--y-range", "-1.6:-0.4:5"};
  const auto a = run(args);
  REQUIRE(a.code == 0);
  const auto rows = lines(a.out);
  CHECK(rows.size() == 26);
  CHECK(rows[0] == "x_log10_kappa,y_lmu_minus_omega,psi,energy,L_expect,phase,n_max,converged");
  CHECK(run(args).out == a.out);
}

TEST_CASE("diagram to a file") {
  const auto path = temp_file("grid.csv");
  std::filesystem::remove(path);
  const auto r = run({"diagram", "--l", "2", "--x-range", "-4:-3:2", "--y-range", "-1:-0.3:2", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(lines(ss.str()).size() == 5);
  std::filesystem::remove(path);
}

TEST_CASE("l=3 diagram holds only superfluid and forbidden cells") {
  const auto r = run({"diagram", "--l", "3", "--x-range", "-4:-0.2:4", "--y-range", "-1.5:0.3:4"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto phase = column(rows[k], 5);
    CHECK((phase == "SF" || phase == "FORBIDDEN"));
  }
}

TEST_CASE("diagram with unphysical rows still writes the grid and exits 2") {
  const auto r = run({"diagram", "--l", "1", "--x-range", "-4:-3:2", "--y-range", "0:2:3"});
  CHECK(r.code == 2);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 7);
  CHECK(column(rows.back(), 5) == "INVALID");
}

TEST_CASE("analytic tables") {
  const auto two = run({"analytic", "--l", "2"});
  REQUIRE(two.code == 0);
  CHECK(two.out.find("2.6180339") != std::string::npos);
  CHECK(two.out.find("1.921479") != std::string::npos);
  CHECK(two.out.find("omega-2") != std::string::npos);

  const auto one = run({"analytic", "--l", "1"});
  REQUIRE(one.code == 0);
  bool found_origin = false;
  for (const auto& row : lines(one.out)) {
    if (row.rfind("strong_coupling,1,0,,upper,", 0) == 0) {
      CHECK(column(row, 5) == "0");
      CHECK(column(row, 7) == "-1");
      found_origin = true;
      break;
    }
  }
  CHECK(found_origin);

  CHECK(run({"analytic", "--l", "4"}).out.find("Unbounded") != std::string::npos);
}

TEST_CASE("boundary subcommand") {
  const auto r = run({"boundary", "--l", "2", "--x", "-4", "--y-range", "-1:-0.3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("-0.61") != std::string::npos);
  CHECK(run({"boundary", "--l", "2", "--x", "-4", "--y-range", "-1:-0.9"}).code == 2);
  CHECK(run({"boundary", "--l", "2", "--x", "-4", "--y", "-1", "--y-range", "-1:-0.3"}).code == 1);
}

TEST_CASE("scan subcommand") {
  const auto r = run({"scan", "--l", "1", "--y", "-1.2", "--x-range", "-3:-0.3:4"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 5);
  CHECK(rows[0] == "x_log10_kappa,energy,psi,L_expect,dE_dx");
}

TEST_CASE("config file supplies defaults that flags override") {
  const auto path = temp_file("config.toml");
  {
    std::ofstream cfg(path);
    cfg << "l = 2\nx = -4\ny = -1.0\n";
  }
  const auto from_file = run({"point", "--config", path.string()});
  CHECK(from_file.code == 0);
  CHECK(from_file.out.find("phase MI:0") != std::string::npos);
  const auto overridden = run({"point", "--config", path.string(), "--y", "-0.3"});
  CHECK(overridden.out.find("phase MI:2") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("validate subsets and deliberate misconfiguration") {
  const auto ok = run({"validate", "--only", "1,2"});
  CHECK(ok.code == 0);
  CHECK(ok.err.find("[PASS] 1") != std::string::npos);
  CHECK(ok.err.find("[PASS] 2") != std::string::npos);
  CHECK(ok.out.find("\"passed\": true") != std::string::npos);

  const auto bad = run({"validate", "--only", "4", "--pin-fraction", "2"});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("[FAIL] 4") != std::string::npos);
}
