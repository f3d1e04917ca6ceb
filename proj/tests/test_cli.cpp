#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "toto/cli/commands.hpp"
#include "toto/cli/report.hpp"
#include "toto/core_model.hpp"

using namespace toto;
using namespace toto::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  std::string l;
  while (std::getline(is, l)) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("solve prints the optimum") {
  const Run r = call({"solve", "--gamma", "1.7320508", "--u1", "0.0002", "--u2", "6.5"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("T2-") != std::string::npos);
  CHECK(r.out.find("1.3888") != std::string::npos);
  CHECK(r.out.find("optimal: T2-") != std::string::npos);

  const Run c = call({"solve", "--gamma", "8", "--u1", "0.0002", "--u2", "1"});
  CHECK(c.code == kExitOk);
  CHECK(c.out.find("optimal: T3+") != std::string::npos);
  CHECK(c.out.find("7.3864") != std::string::npos);
}

TEST_CASE("solve exit codes") {
  CHECK(call({"solve", "--gamma", "0.5", "--u1", "0.1", "--u2", "2"}).code == kExitInvalidInput);
  CHECK(call({"solve", "--gamma", "2"}).code == kExitInvalidInput);
  CHECK(call({"solve", "--gamma", "2", "--u1", "0.01", "--u2", "2", "--omega0", "1"}).code == kExitInvalidInput);
  CHECK(call({"solve", "--bogus"}).code == kExitInvalidInput);
  CHECK(call({}).code == kExitInvalidInput);
  CHECK(call({"--help"}).code == kExitOk);
  const Run help = call({"solve", "--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("--gamma") != std::string::npos);
}

TEST_CASE("solve with physical input and seconds") {
  const Run scaled = call({"solve", "--omega0", "2", "--omegaf", "0.6666666666666666", "--omega1",
                           "0.0282842712474619", "--omega2", "2", "--json"});
  REQUIRE(scaled.code == kExitOk);
  const Run sec = call({"solve", "--omega0", "2", "--omegaf", "0.6666666666666666", "--omega1",
                        "0.0282842712474619", "--omega2", "2", "--json", "--seconds"});
  REQUIRE(sec.code == kExitOk);
  const double t_scaled = Json::parse(scaled.out)["optimal"]["total_time"].get<double>();
  const double t_sec = Json::parse(sec.out)["optimal"]["total_time"].get<double>();
  CHECK(t_scaled == doctest::Approx(1.678466).epsilon(1e-5));
  CHECK(t_sec == doctest::Approx(t_scaled / 2.0).epsilon(1e-9));
  CHECK(call({"solve", "--gamma", "2", "--u1", "0.01", "--u2", "2", "--seconds"}).code == kExitInvalidInput);
}

TEST_CASE("JSON output round-trips byte for byte") {
  const Run r = call({"solve", "--gamma", "8", "--u1", "0.0002", "--u2", "4", "--json"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j.dump(2) + "\n" == r.out);
  CHECK(j["optimal"]["label"] == "T4-");
  CHECK(j["candidates"].size() == 11);
  int marked = 0;
  for (const Json& c : j["candidates"]) marked += c["optimal"].get<bool>() ? 1 : 0;
  CHECK(marked == 1);
  CHECK(j["validation"]["passed"] == true);
}

TEST_CASE("table") {
  const Run r = call({"table"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("7.0651") != std::string::npos);
  std::string t5;
  for (const std::string& l : lines(r.out))
    if (l.rfind("T5+", 0) == 0) t5 = l.substr(0, l.find_last_not_of(' ') + 1);
  REQUIRE_FALSE(t5.empty());
  CHECK(t5.substr(t5.size() - 1) == "-");

  const Run loose = call({"table", "--tolerance", "0.01"});
  CHECK(loose.code == kExitOk);
  CHECK(loose.out.find("max deviation:") != std::string::npos);
}

TEST_CASE("parse_range") {
  const GridRange g = parse_range("1:2:3");
  CHECK(g.steps == 3);
  CHECK(g.at(0) == 1.0);
  CHECK(g.at(1) == 1.5);
  CHECK(g.at(2) == 2.0);
  CHECK(parse_range("8:8:1").at(0) == 8.0);
  CHECK_THROWS(parse_range("1:2"));
  CHECK_THROWS(parse_range("1:2:0"));
  CHECK_THROWS(parse_range("a:2:3"));
  CHECK_THROWS(parse_range("1:2:3:4"));
}

TEST_CASE("sweep rows") {
  const Run r = call({"sweep", "--gamma-range", "1.7320508:8:2", "--u2-range", "0.5:6.5:3", "--u1", "0.0002"});
  REQUIRE(r.code == kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "gamma,u2,optimal_family,n,branch,switch_count,total_time,status");
  // Row-major: gamma outer, u2 inner.
  CHECK(split(rows[1], ',').back() == "invalid");  // u2 = 0.5
  const auto sqrt3_65 = split(rows[3], ',');
  CHECK(sqrt3_65[1] == "6.5");
  CHECK(sqrt3_65[5] == "2");
  CHECK(std::stod(sqrt3_65[6]) == doctest::Approx(1.3888).epsilon(1e-4));
  CHECK(sqrt3_65[7] == "ok");
  const auto eight_1 = split(rows[5], ',');
  CHECK(eight_1[0] == "8");
  CHECK(eight_1[1] == "3.5");
  const auto eight_65 = split(rows[6], ',');
  CHECK(split(rows[4], ',').back() == "invalid");
  CHECK(eight_65.size() == 8);

  const Run one = call({"sweep", "--gamma-range", "8:8:1", "--u2-range", "1:1:1", "--u1", "0.0002"});
  REQUIRE(one.code == kExitOk);
  CHECK(split(lines(one.out)[1], ',')[5] == "3");

  CHECK(call({"sweep", "--gamma-range", "1:2", "--u2-range", "1:2:2", "--u1", "0.0002"}).code == kExitInvalidInput);
}

TEST_CASE("simulate writes a consistent CSV") {
  const auto path = std::filesystem::temp_directory_path() / "toto_cli_simulate_test.csv";
  const Run r = call({"simulate", "--gamma", "8", "--u1", "0.0002", "--u2", "4", "--samples-per-segment", "40",
                      "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::filesystem::remove(path);
  const auto rows = lines(buf.str());
  REQUIRE(rows.size() > 3);
  CHECK(rows[0] == "t,x1,x2,u,z1,z2,z3");
  const auto first = split(rows[1], ',');
  CHECK(first[0] == "0");
  CHECK(first[1] == "1");
  CHECK(first[2] == "0");
  CHECK(first[4] == "1");
  CHECK(first[5] == "1");
  CHECK(first[6] == "0");
  const auto last = split(rows.back(), ',');
  CHECK(std::abs(std::stod(last[1]) - 8.0) < 1e-6);
  CHECK(std::abs(std::stod(last[2])) < 1e-6);
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i], ',');
    const ZState z{std::stod(f[4]), std::stod(f[5]), std::stod(f[6])};
    worst = std::max(worst, std::abs(casimir(z) - 1.0));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("simulate reports unwritable output") {
  const Run r = call({"simulate", "--gamma", "8", "--u1", "0.0002", "--u2", "4", "--out",
                      "/nonexistent-dir/x/out.csv"});
  CHECK(r.code == kExitIo);
}
