#include <doctest.h>

#include <cmath>
#include <limits>

#include "lebdyn/analysis.hpp"
#include "lebdyn/io.hpp"

using namespace lebdyn;
using nlohmann::json;

TEST_CASE("number_json") {
  CHECK(number_json(0.5) == json(0.5));
  CHECK(number_json(std::numeric_limits<double>::infinity()) == json("inf"));
  CHECK(number_json(-std::numeric_limits<double>::infinity()) == json("-inf"));
  CHECK(number_json(std::nan("")).is_null());
}

TEST_CASE("csv helpers") {
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(csv_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(csv_line({"a", "b,c", "say \"hi\""}) == "a,\"b,c\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("inequality CSV columns") {
  InequalityReport r;
  InequalityRow row;
  row.name = "x";
  row.lhs = 1.0;
  row.rhs = 0.5;
  row.slack = 0.5;
  row.tol = 0.15;
  row.status = "pass";
  row.lhs_src = "measured";
  row.rhs_src = "analytic";
  r.rows.push_back(row);
  CHECK(inequality_csv(r) ==
        "name,lhs,rhs,slack,tol,pass,lhs_src,rhs_src,status\n"
        "x,1,0.5,0.5,0.14999999999999999,true,measured,analytic,pass\n");
}

TEST_CASE("delta CSV has one row per cover and n") {
  SystemSpec s;
  s.family = "doubling";
  s.params = {{"m", 10}};
  s.mesh_radii = {1.0 / 32};
  const auto b = generate_system(s);
  const auto covers = cover_rates(b);
  const auto text = delta_csv("doubling", covers);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 1 + 8);
  CHECK(text.rfind("system,cover_id,n,delta_n,a_n,capped\n", 0) == 0);
  const auto& v = covers.front().sequence.values;
  for (std::size_t n = 1; n < v.size(); ++n) CHECK(v[n] <= v[n - 1]);
}

TEST_CASE("analysis JSON is reproducible and names failures") {
  SystemSpec s;
  s.family = "rotation";
  s.known = {{"h", 2.0}};
  const auto b = generate_system(s);
  const auto a1 = to_json(analyze(b)).dump();
  const auto a2 = to_json(analyze(generate_system(s))).dump();
  CHECK(a1 == a2);
  const auto j = json::parse(a1);
  CHECK(j.at("passed") == false);
  CHECK_FALSE(j.at("failed").empty());
  for (const auto& row : j.at("inequalities")) CHECK(row.contains("lhs_src"));
}

TEST_CASE("catalog JSON") {
  const auto c = catalog_json();
  REQUIRE(c.size() == 11);
  CHECK(c.at(0).at("name") == "doubling");
  CHECK(c.at(0).at("params").at(0).at("name") == "m");
}
