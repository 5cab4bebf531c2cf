#include <doctest.h>

#include <algorithm>
#include <random>

#include "esc/oracle.hpp"
#include "support.hpp"

using namespace esc;
using esc::test::fixture;
using esc::test::upper;

TEST_SUITE("oracle") {

TEST_CASE("oracle on the fixtures") {
  const auto t1 = fixture("T1");
  CHECK(oracle_skyline(t1, {2, 2}, upper(t1, "u0")) == SkylineSet{{2}});
  const auto t2 = fixture("T2");
  CHECK(oracle_skyline(t2, {2, 2}, upper(t2, "u0")) == SkylineSet{{1, 9}, {8, 5}});
  const auto t3 = fixture("T3");
  CHECK(oracle_skyline(t3, {2, 2}, upper(t3, "u0")) == SkylineSet{{1, 9, 4}, {8, 5, 2}});
}

TEST_CASE("oracle community at thresholds") {
  const auto g = fixture("T2");
  const auto inner = oracle_community(g, {2, 2}, upper(g, "u0"), {8, 5});
  REQUIRE(inner);
  CHECK(*inner == std::vector<EdgeId>{0, 1, 2, 3});
  CHECK_FALSE(oracle_community(g, {2, 2}, upper(g, "u2"), {8, 5}));
}

TEST_CASE("size guard") {
  const auto g = generate_attributes(random_topology(20, 20, 60, 1), 2, 1, 9, 1);
  CHECK_FALSE(within_oracle_limits(g));
  CHECK_THROWS_AS(oracle_skyline(g, {2, 2}, VertexRef{}), OracleRefusal);
  CHECK_NOTHROW(oracle_skyline(g, {2, 2}, VertexRef{}, true));
}

TEST_CASE("oracle output is realizable, non-dominated and order-insensitive") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 150; ++it) {
    auto inst = esc::test::random_instance(rng, 1 + it % 3, 6, 18);
    const auto& g = inst.graph;
    const auto s = oracle_skyline(g, inst.constraint, inst.query);
    for (const auto& v : s) {
      const auto comm = oracle_community(g, inst.constraint, inst.query, v);
      REQUIRE(comm);
      SignificanceVector got(g.dims());
      for (std::size_t i = 0; i < g.dims(); ++i) {
        got[i] = g.attr(comm->front(), i);
        for (EdgeId e : *comm) got[i] = std::min(got[i], g.attr(e, i));
      }
      CHECK(got == v);
    }
    // Same graph with edges listed in reverse order.
    Topology t = g.topology();
    std::vector<Attr> attrs;
    std::reverse(t.edges.begin(), t.edges.end());
    for (EdgeId e = static_cast<EdgeId>(g.edge_count()); e-- > 0;)
      attrs.insert(attrs.end(), g.attrs(e).begin(), g.attrs(e).end());
    const BipartiteGraph r(t, g.dims(), attrs);
    CHECK(oracle_skyline(r, inst.constraint, inst.query) == s);
  }
}

TEST_CASE("verify_result reports each kind of failure") {
  const auto g = fixture("T2");
  const auto q = upper(g, "u0");
  CHECK(verify_result(g, {2, 2}, q, SkylineSet{{1, 9}, {8, 5}}).ok());

  const std::vector<SignificanceVector> dominated{{1, 9}, {1, 5}};
  const auto r1 = verify_result(g, {2, 2}, q, dominated);
  CHECK_FALSE(r1.ok());
  CHECK(std::any_of(r1.failures.begin(), r1.failures.end(),
                    [](const std::string& f) { return f.find("dominates") != std::string::npos; }));

  const std::vector<SignificanceVector> unreal{{9, 9}};
  const auto r2 = verify_result(g, {2, 2}, q, unreal);
  CHECK_FALSE(r2.ok());
  CHECK(r2.failures.front().find("not realizable") != std::string::npos);
  CHECK(r2.oracle_compared);
}

}  // TEST_SUITE
