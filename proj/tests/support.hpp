#pragma once

// Shared fixtures and random-instance helpers for the test binaries.

#include <random>
#include <sstream>
#include <string>

#include "esc/graph.hpp"

#ifndef ESC_TEST_DATA
#define ESC_TEST_DATA "tests/data"
#endif

namespace esc::test {

inline BipartiteGraph fixture(const std::string& name) {
  return load_edge_list_file(std::string(ESC_TEST_DATA) + "/" + name + ".el");
}

inline BipartiteGraph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

inline VertexRef upper(const BipartiteGraph& g, const std::string& label) {
  return *g.find_vertex(Layer::Upper, label);
}
inline VertexRef lower(const BipartiteGraph& g, const std::string& label) {
  return *g.find_vertex(Layer::Lower, label);
}

struct RandomInstance {
  BipartiteGraph graph;
  DegreeConstraint constraint;
  VertexRef query;
};

/// Small graph with integer attributes in [1, max_attr] so that ties are common.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t d, std::size_t max_side = 8,
                                      std::size_t max_edges = 32, int max_attr = 9,
                                      std::uint32_t max_bound = 3) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t nu = pick(1, max_side), nl = pick(1, max_side);
  const std::size_t m = pick(1, std::min(max_edges, nu * nl));
  const Topology topo = random_topology(nu, nl, m, rng());
  std::vector<Attr> attrs(m * d);
  for (auto& x : attrs) x = static_cast<Attr>(pick(1, static_cast<std::size_t>(max_attr)));
  BipartiteGraph g(topo, d, std::move(attrs));
  const DegreeConstraint c(static_cast<std::uint32_t>(pick(1, max_bound)),
                           static_cast<std::uint32_t>(pick(1, max_bound)));
  const bool up = pick(0, 1) == 0;
  const VertexRef q{up ? Layer::Upper : Layer::Lower,
                    static_cast<std::uint32_t>(pick(0, (up ? nu : nl) - 1))};
  return {std::move(g), c, q};
}

}  // namespace esc::test
