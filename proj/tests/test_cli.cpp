#include "sasaki/cli.hpp"
#include "sasaki/report.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

using namespace sasaki;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::set<std::string> keys(const Json& j) {
  std::set<std::string> k;
  for (const auto& [key, value] : j.items()) k.insert(key);
  return k;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sasaki_test_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("number lists") {
  CHECK(parse_number_list("1,2.5,3/4") == std::vector<double>{1.0, 2.5, 0.75});
  CHECK(parse_number_list(" 1 , 2") == std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(parse_number_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number_list("1,"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number_list("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number_list("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number_list(""), std::invalid_argument);
}

TEST_CASE("classify json") {
  const Run r = run({"classify", "--n", "1", "--weights", "1,1", "--output", "json"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["csc"] == true);
  CHECK(j["einstein"] == true);
  CHECK(j["A"] == Json::array({0.0, 0.0}));
  CHECK(keys(j) == std::set<std::string>{"csc", "einstein", "A", "futaki_norm", "lambda", "folded_scale",
                                         "einstein_residual", "command", "n", "weights", "a"});
  CHECK(r.out.rfind("{\"csc\":true,\"einstein\":true,\"A\":[", 0) == 0);
  const Json k = Json::parse(run({"classify", "--weights", "1,2", "--output", "json"}).out);
  CHECK(k["lambda"].is_null());
  CHECK(k["csc"] == false);
}

TEST_CASE("futaki json") {
  const Run r = run({"futaki", "--n", "1", "--weights", "1,2", "--b", "1,0", "--method", "all", "--output", "json"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(keys(j) == std::set<std::string>{"command", "n", "weights", "b", "method", "quad_order", "values", "spread"});
  const double target = -2 * std::numbers::pi * std::numbers::pi;
  for (const char* m : {"closed", "chart", "sphere"}) CHECK(std::abs(j["values"][m].get<double>() - target) < 1e-8);
  const Json one = Json::parse(
      run({"futaki", "--weights", "1,2", "--b", "1,0", "--method", "chart", "--output", "json"}).out);
  CHECK(one["values"]["closed"].is_null());
  CHECK(one["values"]["chart"].is_number());
  CHECK(run({"futaki", "--weights", "1,2", "--b", "1,0", "--method", "nope"}).code == kExitUsage);
  CHECK(run({"futaki", "--weights", "1,2", "--b", "1"}).code == kExitUsage);
  CHECK(run({"futaki", "--weights", "1,2"}).code == kExitUsage);
}

TEST_CASE("volume json") {
  const Run r = run({"volume", "--n", "2", "--weights", "1,1,1", "--output", "json"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  const double pi3 = std::pow(std::numbers::pi, 3);
  CHECK(std::abs(j["closed"].get<double>() - pi3) < 1e-12);
  CHECK(std::abs(j["numeric"].get<double>() - pi3) < 1e-8);
  CHECK(j["mc"].is_null());
  CHECK(keys(j) == std::set<std::string>{"command", "n", "weights", "quad_order", "closed", "numeric", "rel_err", "mc"});
  const Json mc = Json::parse(run({"volume", "--weights", "1,2", "--mc-samples", "20000", "--output", "json"}).out);
  CHECK(keys(mc["mc"]) == std::set<std::string>{"samples", "seed", "value", "stderr"});
}

TEST_CASE("structure-check and curvature") {
  const Run s = run({"structure-check", "--weights", "1,2,3", "--points", "10", "--output", "json"});
  CHECK(s.code == kExitOk);
  const Json j = Json::parse(s.out);
  CHECK(j["pass"] == true);
  CHECK(j["worst"].get<double>() < 1e-10);
  const Run c = run({"curvature", "--weights", "1,2", "--points", "2", "--output", "json"});
  CHECK(c.code == kExitOk);
  const Json k = Json::parse(c.out);
  CHECK(k["rows"].size() == 2);
  CHECK(keys(k["rows"][0]) ==
        std::set<std::string>{"point", "r", "s_fd", "s_closed", "s_transverse_closed", "rel_err", "reeb_res"});
  CHECK(k["max_rel_err"].get<double>() < 1e-3);
  const Run csv = run({"curvature", "--weights", "1,2", "--points", "2", "--output", "csv"});
  CHECK(csv.out.rfind("point,r0,r1,s_fd,s_closed,s_transverse_closed,rel_err,reeb_res\n", 0) == 0);
  CHECK(run({"curvature", "--weights", "1,2", "--fd-step", "0.5"}).code == kExitUsage);
}

TEST_CASE("flow") {
  const std::string out_json = temp_path("flow.json"), out_csv = temp_path("profile.csv");
  const Run r = run({"flow", "--weights", "1,2", "--output", "json", "--out", out_json, "--profile-csv", out_csv,
                     "--profile-rows", "11"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["converged"] == true);
  CHECK(j["relative_gap"].get<double>() < 1e-3);
  std::ifstream f(out_json);
  CHECK(Json::parse(f) == j);
  std::ifstream p(out_csv);
  std::string header;
  std::getline(p, header);
  CHECK(header == "sigma,phi,s_deformed,s_closed_baseline");
  int lines = 0;
  for (std::string line; std::getline(p, line);) ++lines;
  CHECK(lines == 11);
  std::remove(out_json.c_str());
  std::remove(out_csv.c_str());

  const Run capped = run({"flow", "--weights", "1,2", "--max-iter", "1"});
  CHECK(capped.code == kExitFailure);
  CHECK(run({"flow", "--weights", "1,2,3"}).code == kExitUsage);
  CHECK(run({"flow", "--weights", "1,2", "--gradient", "forward"}).code == kExitUsage);
  const Run csv = run({"flow", "--weights", "1,2", "--output", "csv"});
  CHECK(csv.out.rfind("iteration,energy,grad_norm\n", 0) == 0);
}

TEST_CASE("verify") {
  const Run r = run({"verify", "--suite", "identities"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("PASS  [1]") != std::string::npos);
  CHECK(r.out.find("PASS  [2]") != std::string::npos);
  const Json j = Json::parse(run({"verify", "--suite", "futaki", "--output", "json"}).out);
  CHECK(j["criteria"].size() == 4);
  CHECK(run({"verify", "--suite", "bogus"}).code == kExitUsage);
}

TEST_CASE("json output is byte-stable") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"classify", "--weights", "1,2,3", "--output", "json"},
           {"futaki", "--weights", "1,3", "--b", "0,1", "--output", "json"},
           {"verify", "--suite", "variational", "--output", "json"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("argument errors") {
  const Run bad = run({"classify", "--weights", "1,-2"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("--weights") != std::string::npos);
  const Run arity = run({"classify", "--n", "2", "--weights", "1,2"});
  CHECK(arity.code == kExitUsage);
  CHECK(arity.err.find("--weights") != std::string::npos);
  CHECK(run({"classify"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"classify", "--weights", "1,2", "--output", "xml"}).code == kExitUsage);
  CHECK(run({"classify", "--weights", "1,2", "--a", "0"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("config files") {
  const std::string path = temp_path("config.cfg");
  {
    std::ofstream f(path);
    f << "# classify settings\nweights = 2,2\noutput = json\nno-fd-check = true\n";
  }
  const Json j = Json::parse(run({"classify", "--config", path}).out);
  CHECK(j["csc"] == true);
  CHECK(j["einstein_residual"].is_null());
  // command-line flags win over the file
  const Json k = Json::parse(run({"classify", "--config", path, "--weights", "1,2"}).out);
  CHECK(k["csc"] == false);
  {
    std::ofstream f(path);
    f << "bogus = 1\n";
  }
  CHECK(run({"classify", "--weights", "1,1", "--config", path}).code == kExitUsage);
  std::remove(path.c_str());
  CHECK(run({"classify", "--weights", "1,1", "--config", temp_path("missing.cfg")}).code == kExitUsage);
}

}
