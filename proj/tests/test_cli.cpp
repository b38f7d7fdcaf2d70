#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "dbr/app.hpp"
#include "dbr/error.hpp"

using namespace dbr;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dbr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = app::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("dbr_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("index set language") {
  CHECK(app::parse_index_set("range:3..7").members() == std::vector<std::uint64_t>{3, 4, 5, 6, 7});
  CHECK(app::parse_index_set("primes<=12").members() == std::vector<std::uint64_t>{1, 2, 3, 5, 7, 11});
  CHECK(app::parse_index_set("powers-of-3<=81").members() == std::vector<std::uint64_t>{1, 3, 9, 27, 81});
  CHECK(app::parse_index_set("blocks:[[2,3]]<=12").members() ==
        std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9, 12});
  CHECK(app::parse_index_set("primes<=30").label() == "primes<=30");
  for (const char* bad : {"range:5..2", "range:0..4", "range:1..", "primes<=", "powers-of-4<=10", "blocks:[2]<=5",
                          "blocks:[[2],[2]]<=5", "evens<=10", "primes<=1e9"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(app::parse_index_set(bad), Error);
  }
}

TEST_CASE("table output") {
  const Result r = cli({"table", "1e2", "1e7", "11"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "x,q,L_upper,target,ratio");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 11);
  CHECK(r.out.find("10000,12,") != std::string::npos);

  const Result tiny = cli({"table", "10", "40", "3"});
  CHECK(tiny.code == 0);
  CHECK(tiny.out.find("10,1,1,") != std::string::npos);
  CHECK(tiny.out.find("40,1,1,") != std::string::npos);

  CHECK(cli({"table", "1", "40", "3"}).code == 2);
  CHECK(cli({"table", "50", "40", "3"}).code == 2);
  CHECK(cli({"table", "abc", "40", "3"}).code == 2);
  CHECK(cli({"table", "1e2", "1e3", "2", "--format", "json"}).out.find("\"rows\"") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"verify", "nope"}).code == 2);
  CHECK(cli({"radius", "range:x..y"}).code == 2);
  CHECK(cli({"--budget-samples", "0", "table", "1e2", "1e3", "2"}).code == 2);
  CHECK(cli({"--format", "xml", "table", "1e2", "1e3", "2"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  const std::string bad = temp_file("bad.json", "{\"x\": 10, \"terms\": [[2, 1.0");
  const Result r = cli({"radius", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("parse") != std::string::npos);
}

TEST_CASE("radius on index sets") {
  const std::vector<std::string> budget{"--budget-restarts", "8", "--budget-steps", "100"};
  auto with = [&](std::vector<std::string> args) {
    args.insert(args.end(), budget.begin(), budget.end());
    return cli(args);
  };
  const Result primes = with({"radius", "primes<=30"});
  CHECK(primes.code == 0);
  const auto j = nlohmann::json::parse(primes.out);
  CHECK(j["upper"].get<double>() == doctest::Approx(1.0));
  CHECK(j["certified_upper"] == false);

  const Result powers = with({"radius", "powers-of-2<=64"});
  const double upper = nlohmann::json::parse(powers.out)["upper"].get<double>();
  CHECK(upper > 1.0 / 3.0);
  CHECK(upper < 0.42);
}

TEST_CASE("supnorm and witness commands") {
  const std::string file = temp_file("lin.json", R"({"x": 3, "terms": [[2, 1.0, 0.0], [3, 0.0, 1.0]]})");
  const Result r = cli({"--budget-samples", "2048", "supnorm", file});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["lower"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(j.contains("tline_max"));

  const Result w = cli({"witness", "dft", "--q", "4"});
  REQUIRE(w.code == 0);
  const auto wj = nlohmann::json::parse(w.out);
  CHECK(wj["l1"] == 16.0);
  CHECK(wj["L2_upper"]["upper"].get<double>() == doctest::Approx(std::pow(4.0, -0.25)));

  const Result m = cli({"witness", "moebius", "--a", "0.9"});
  CHECK(nlohmann::json::parse(m.out)["certified_r"].get<double>() == doctest::Approx(1.0 / 2.8).epsilon(1e-5));
  CHECK(cli({"witness", "steinhaus", "--vars", "3", "--m", "2"}).code == 0);
  CHECK(cli({"witness", "dft"}).code == 2);
  CHECK(cli({"witness", "unknown"}).code == 2);
}

TEST_CASE("witness output feeds supnorm") {
  const auto path = (std::filesystem::temp_directory_path() / "dbr_test_moebius.json").string();
  REQUIRE(cli({"--out", path, "witness", "moebius", "--a", "0.5", "--degree", "20"}).code == 0);
  const Result s = cli({"--budget-samples", "2048", "supnorm", path});
  REQUIRE(s.code == 0);
  // |phi_a| = 1 on the circle; the truncation tail adds at most (1+a)a^N.
  const double lower = nlohmann::json::parse(s.out)["lower"].get<double>();
  CHECK(lower >= 1.0 - 1e-6);
  CHECK(lower <= 1.0 + 1.5 * std::pow(0.5, 20));

  const auto dft = (std::filesystem::temp_directory_path() / "dbr_test_dft.json").string();
  REQUIRE(cli({"--out", dft, "witness", "dft", "--q", "3"}).code == 0);
  const Result d = cli({"--budget-samples", "2048", "supnorm", dft});
  REQUIRE(d.code == 0);
  CHECK(nlohmann::json::parse(d.out)["upper"].get<double>() == doctest::Approx(9.0));
}

TEST_CASE("output file and byte-identical reruns") {
  const auto path = (std::filesystem::temp_directory_path() / "dbr_test_out.json").string();
  const std::vector<std::string> args{"--seed", "0x2A", "--out", path, "verify", "caratheodory"};
  REQUIRE(cli(args).code == 0);
  std::stringstream first;
  first << std::ifstream(path).rdbuf();
  ::setenv("DBR_THREADS", "2", 1);
  REQUIRE(cli(args).code == 0);
  ::unsetenv("DBR_THREADS");
  std::stringstream second;
  second << std::ifstream(path).rdbuf();
  CHECK(first.str() == second.str());
  CHECK(nlohmann::json::parse(first.str())["seed"] == 42);
}

TEST_CASE("bohr13 suite passes") {
  const Result r = cli({"verify", "bohr13"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["pass"] == true);
}

}  // TEST_SUITE
