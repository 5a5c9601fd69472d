#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "ordstat/report.hpp"

using namespace ordstat;

TEST_CASE("doubles keep 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("bound reports as CSV") {
  BoundReport r;
  r.name = "sum_kmin";
  r.k = 2;
  r.p = 1.0;
  r.lower = 0.25;
  r.upper = INFINITY;
  r.params = {{"alpha", 1.0}, {"S", 2.0}};
  r.citation = "a, b";
  std::ostringstream out;
  const std::vector<Record> rows{to_record(r)};
  write_csv(out, rows);
  CHECK(out.str() ==
        "name,k,p,lower,upper,params,citation,assertable,seed,samples\n"
        "sum_kmin,2,1,0.25,inf,S=2;alpha=1,\"a, b\",true,0,0\n");
}

TEST_CASE("header is written even without rows") {
  std::ostringstream out;
  write_csv(out, std::vector<Record>{});
  CHECK(out.str() == "\n");
}

TEST_CASE("mixed records share one header") {
  const std::vector<Record> rows{{{"a", 1.0}, {"b", std::string("x")}}, {{"b", std::string("y")}, {"c", true}}};
  std::ostringstream out;
  write_csv(out, rows);
  CHECK(out.str() == "a,b,c\n1,x,\n,y,true\n");
}

TEST_CASE("estimates as JSON") {
  McEstimate e;
  e.mean = 1.5;
  e.std_error = 0.01;
  e.median = 1.4;
  e.median_ci = {1.3, 1.5};
  e.samples = 1000;
  e.seed = 42;
  std::ostringstream out;
  const std::vector<Record> rows{to_record(e, "est")};
  write_json(out, "estimate", nlohmann::json{{"dist", "half-normal"}}, rows);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["command"] == "estimate");
  CHECK(doc["dist"] == "half-normal");
  REQUIRE(doc["records"].size() == 1);
  CHECK(doc["records"][0]["mean"] == 1.5);
  CHECK(doc["records"][0]["seed"] == 42);
  CHECK(doc["records"][0]["samples"] == 1000);
  const Record inf_row{{"upper", INFINITY}};
  CHECK(to_json(inf_row)["upper"] == "inf");
}
