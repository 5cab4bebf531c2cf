#include <doctest.h>

#include <random>

#include "esc/core.hpp"
#include "esc/oracle.hpp"
#include "support.hpp"

using namespace esc;
using esc::test::fixture;
using esc::test::upper;

TEST_SUITE("core") {

TEST_CASE("maximal core of T2 keeps everything for alpha=beta=2") {
  const auto g = fixture("T2");
  const auto core = maximal_core(WorkingGraph(g, true), {2, 2});
  CHECK(core.edge_count() == 10);
  const auto c = maximal_core_containing(WorkingGraph(g, true), {2, 2}, upper(g, "u2"));
  REQUIRE(c);
  CHECK(c->edges.size() == 10);
  CHECK(c->significance == SignificanceVector{1, 5});
  CHECK(c->upper_vertices == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("alpha above every degree empties the core") {
  const auto g = fixture("T2");
  CHECK(maximal_core(WorkingGraph(g, true), {5, 1}).empty());
  CHECK_FALSE(maximal_core_containing(WorkingGraph(g, true), {5, 1}, upper(g, "u0")));
}

TEST_CASE("u2 is cascaded away when alpha=3") {
  const auto g = fixture("T2");
  const auto core = maximal_core(WorkingGraph(g, true), {3, 2});
  CHECK(core.degree(g.vertex_id(upper(g, "u2"))) == 0);
  CHECK(core.edge_count() == 8);
}

TEST_CASE("component restriction") {
  const auto g = fixture("T2");
  const auto w = filtered_view(g, ThresholdBox(2).with(0, 8, false).with(1, 5, false));
  // Only the inner block survives; u2 is isolated.
  CHECK(component_edges(w, g.vertex_id(upper(g, "u0"))).size() == 4);
  CHECK(component_edges(w, g.vertex_id(upper(g, "u2"))).empty());
}

TEST_CASE("cascade abort restores every edge and clears the log") {
  const auto g = fixture("T1");
  WorkingGraph w(g, true);
  const WorkingGraph before = w;
  const VertexId q = g.vertex_id(upper(g, "u0"));
  std::vector<EdgeId> rollback{3};
  w.remove(3);  // (u1, v1): u1 and v1 drop below 2, which takes q below 2 as well
  const auto r = cascade_delete(w, g.upper_vertex(3), q, {2, 2}, rollback, {});
  CHECK(r == CascadeResult::Abort);
  CHECK(rollback.empty());
  CHECK(w == before);
}

TEST_CASE("cascade abort on a fixed edge") {
  const auto g = fixture("T2");
  WorkingGraph w(g, true);
  const WorkingGraph before = w;
  const VertexId q = g.vertex_id(upper(g, "u0"));
  // Removing (u2, v2) strands u2, whose other edge (u2, v3) is fixed.
  std::vector<EdgeId> rollback{8};
  w.remove(8);
  const auto r = cascade_delete(w, g.upper_vertex(8), q, {2, 2}, rollback, FixedEdgeSet{9});
  CHECK(r == CascadeResult::Abort);
  CHECK(w == before);
}

TEST_CASE("successful cascade logs the removed edges") {
  const auto g = fixture("T2");
  WorkingGraph w(g, true);
  const VertexId q = g.vertex_id(upper(g, "u0"));
  std::vector<EdgeId> rollback{8};
  w.remove(8);
  CHECK(cascade_delete(w, g.upper_vertex(8), q, {2, 2}, rollback, {}) == CascadeResult::Ok);
  CHECK(rollback.size() == 2);
  CHECK(w.edge_count() == 8);
}

TEST_CASE("peel_minimum on T2") {
  const auto g = fixture("T2");
  const VertexId q = g.vertex_id(upper(g, "u0"));
  SearchStats stats;
  WorkingGraph a(g, true);
  CHECK(peel_minimum(a, 0, {2, 2}, q, {}, &stats) == 8);
  CHECK(stats.iterations > 0);
  WorkingGraph b(g, true);
  CHECK(peel_minimum(b, 1, {2, 2}, q, {}) == 9);
  // Pinning an inner edge keeps the dim-1 peel from passing 5.
  WorkingGraph c(g, true);
  CHECK(peel_minimum(c, 1, {2, 2}, q, FixedEdgeSet{0}) == 5);
}

TEST_CASE("peel_minimum stops where a fixed edge would disconnect") {
  // Two blocks joined through v1: dropping the bridge edges splits the fixed block off.
  const auto g = esc::test::parse(
      "u0 v0 5\nu0 v1 5\nu1 v0 5\nu1 v1 5\n"
      "u2 v1 1\nu2 v2 1\nu3 v1 1\nu3 v2 1\n"
      "u2 v3 9\nu2 v4 9\nu3 v3 9\nu3 v4 9\nu4 v3 9\nu4 v4 9\n");
  const VertexId q = g.vertex_id(upper(g, "u0"));
  WorkingGraph w(g, true);
  // Fixed edge (u4, v3) lives in the far block; the only link is through the value-1 edges.
  CHECK(peel_minimum(w, 0, {2, 2}, q, FixedEdgeSet{12}) == 1);
}

TEST_CASE("lemma3/lemma4 never reject a component that holds a core") {
  std::mt19937_64 rng(21);
  std::size_t cores_seen = 0;
  for (int it = 0; it < 1500; ++it) {
    auto inst = esc::test::random_instance(rng, 1, 6, 20, 9, 3);
    const auto& g = inst.graph;
    const WorkingGraph full(g, true);
    const VertexId q = g.vertex_id(inst.query);
    const auto comm = maximal_core_containing(full, inst.constraint, inst.query);
    if (!comm) continue;
    ++cores_seen;
    CHECK(lemma3_check(full, q, inst.constraint));
    CHECK(lemma4_check(full, q, inst.constraint));
    WorkingGraph core(g);
    for (EdgeId e : comm->edges) core.add(e);
    CHECK(lemma3_check(core, q, inst.constraint));
    CHECK(lemma4_check(core, q, inst.constraint));
  }
  CHECK(cores_seen > 100);
}

TEST_CASE("lemma checks reject a sparse component") {
  const auto g = esc::test::parse("u0 v0 1\nu0 v1 1\nu1 v1 1\n");  // a path
  const WorkingGraph w(g, true);
  const VertexId q = g.vertex_id(upper(g, "u0"));
  CHECK_FALSE(lemma3_check(w, q, {2, 2}));
  CHECK_FALSE(lemma4_check(w, q, {2, 2}));
  CHECK(lemma3_check(w, q, {1, 1}));
}

TEST_CASE("materialized community agrees with the naive reference") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 300; ++it) {
    auto inst = esc::test::random_instance(rng, 2);
    SignificanceVector t{double(rng() % 5 + 1), double(rng() % 5 + 1)};
    const auto mine = materialize_community(inst.graph, inst.constraint, inst.query, t);
    const auto ref = oracle_community(inst.graph, inst.constraint, inst.query, t);
    REQUIRE(mine.has_value() == ref.has_value());
    if (mine) CHECK(mine->edges == *ref);
  }
  const auto g = fixture("T2");
  CHECK_THROWS_AS(materialize_community(g, {2, 2}, upper(g, "u0"), {1, 2, 3}), DomainError);
}

}  // TEST_SUITE
