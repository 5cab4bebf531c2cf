#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "esc/query.hpp"
#include "support.hpp"

using namespace esc;
using esc::test::fixture;
using esc::test::upper;

TEST_SUITE("query") {

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("expand") == Algorithm::Expand);
  CHECK(to_string(Algorithm::Auto) == "auto");
  CHECK_THROWS_AS(parse_algorithm("fast"), DomainError);
}

TEST_CASE("query vertex parsing") {
  const auto g = fixture("T2");
  CHECK(parse_query(g, "u:u2") == upper(g, "u2"));
  CHECK(parse_query(g, "l:v3") == esc::test::lower(g, "v3"));
  CHECK(format_query(g, parse_query(g, "l:v3")) == "l:v3");
  try {
    parse_query(g, "u:unknown");
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("unknown") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_query(g, "x:u0"), DomainError);
  CHECK_THROWS_AS(parse_query(g, "u0"), DomainError);
}

TEST_CASE("every family gives the same set, auto included") {
  const auto g = fixture("T3");
  const DegreeConstraint c{2, 2};
  for (const char* label : {"u0", "u1", "u2"}) {
    const auto q = upper(g, label);
    const auto peel = run_query(g, c, q, Algorithm::Peel).skyline;
    CHECK(run_query(g, c, q, Algorithm::Expand).skyline == peel);
    CHECK(run_query(g, c, q, Algorithm::Oracle).skyline == peel);
    const auto a = run_query(g, c, q, Algorithm::Auto);
    CHECK(a.skyline == peel);
    CHECK(a.algo != Algorithm::Auto);
  }
}

TEST_CASE("result document layout") {
  const auto g = fixture("T2");
  const auto q = upper(g, "u0");
  const auto r = run_query(g, {2, 2}, q, Algorithm::Peel, {}, true);
  REQUIRE(r.communities.size() == 2);
  std::ostringstream out;
  write_result_doc(out, g, {"T2.el", {2, 2}, "u:u0", 7}, r, false);
  std::istringstream in(out.str());
  std::vector<nlohmann::json> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(nlohmann::json::parse(line));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0]["graph"] == "T2.el");
  CHECK(lines[0]["m"] == 10);
  CHECK(lines[0]["algo"] == "peel");
  CHECK(lines[0]["seed"] == 7);
  CHECK(lines[1]["significance"] == nlohmann::json::array({1, 9}));
  CHECK(lines[2]["significance"] == nlohmann::json::array({8, 5}));
  CHECK(lines[2]["community"]["upper"] == nlohmann::json::array({"u0", "u1"}));
  CHECK(lines[2]["community"]["edges"].size() == 4);
  CHECK(lines[3]["runtime_ms"].is_null());
  CHECK(lines[3]["iterations"].get<int>() > 0);

  std::ostringstream again;
  write_result_doc(again, g, {"T2.el", {2, 2}, "u:u0", 7}, run_query(g, {2, 2}, q, Algorithm::Peel, {}, true),
                   false);
  CHECK(again.str() == out.str());
}

TEST_CASE("fractional significances are written as numbers") {
  const auto g = esc::test::parse("u0 v0 0.25\n");
  std::ostringstream out;
  write_result_doc(out, g, {"x", {1, 1}, "u:u0", {}}, run_query(g, {1, 1}, upper(g, "u0"), Algorithm::Peel));
  CHECK(out.str().find("[0.25]") != std::string::npos);
}

TEST_CASE("query picking") {
  const auto g = fixture("T2");
  const auto qs = pick_queries(g, {3, 2}, 20, 1);
  CHECK(qs.size() == 6);  // everything but u2 survives
  for (auto q : qs) CHECK_FALSE(q == upper(g, "u2"));
  CHECK(pick_queries(g, {3, 2}, 20, 1) == qs);
  CHECK(pick_queries(g, {3, 2}, 2, 1).size() == 2);
  CHECK(pick_queries(g, {9, 9}, 20, 1).empty());
}

TEST_CASE("bench rows and CSV") {
  const auto g = generate_attributes(random_topology(12, 12, 60, 3), 3, 1, 20, 3);
  BenchConfig cfg;
  cfg.dataset = "rnd";
  cfg.dims = {1, 2, 3};
  cfg.queries = 3;
  const auto rows = run_bench(g, cfg);
  CHECK(rows.size() == 3 * 3 * 2);
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    CHECK(rows[i].algo == Algorithm::Peel);
    CHECK(rows[i + 1].algo == Algorithm::Expand);
    CHECK(rows[i].query == rows[i + 1].query);
    CHECK(rows[i].result_count == rows[i + 1].result_count);
  }
  std::ostringstream csv;
  write_bench_csv_header(csv);
  write_bench_csv_row(csv, rows.front());
  CHECK(csv.str().rfind("dataset,d,alpha,beta,sigma,algo,query,runtime_ms,result_count,iterations\nrnd,1,2,2,100,peel,", 0) == 0);

  cfg.dims = {4};
  CHECK_THROWS_AS(run_bench(g, cfg), DomainError);
}

}  // TEST_SUITE
