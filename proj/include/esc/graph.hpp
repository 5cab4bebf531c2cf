#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "esc/skyline.hpp"
#include "esc/types.hpp"

namespace esc {

struct EdgeEndpoints {
  std::uint32_t upper = 0;
  std::uint32_t lower = 0;
  friend bool operator==(const EdgeEndpoints&, const EdgeEndpoints&) = default;
};

/// Attribute-free bipartite topology with vertex labels.
struct Topology {
  std::vector<std::string> upper_labels;
  std::vector<std::string> lower_labels;
  std::vector<EdgeEndpoints> edges;
};

/// One incidence in the CSR adjacency: the neighbouring vertex and the connecting edge.
struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// Immutable bipartite graph with d-dimensional positive edge attributes.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  /// `attrs` is row-major, edges.size() * dims entries. Validates all invariants.
  BipartiteGraph(Topology topology, std::size_t dims, std::vector<Attr> attrs);

  std::size_t upper_count() const { return topology_.upper_labels.size(); }
  std::size_t lower_count() const { return topology_.lower_labels.size(); }
  std::size_t vertex_count() const { return upper_count() + lower_count(); }
  std::size_t edge_count() const { return topology_.edges.size(); }
  std::size_t dims() const { return dims_; }

  const Topology& topology() const { return topology_; }
  const EdgeEndpoints& endpoints(EdgeId e) const { return topology_.edges[e]; }
  VertexId upper_vertex(EdgeId e) const { return topology_.edges[e].upper; }
  VertexId lower_vertex(EdgeId e) const {
    return static_cast<VertexId>(upper_count() + topology_.edges[e].lower);
  }

  std::span<const Attr> attrs(EdgeId e) const {
    return {attrs_.data() + static_cast<std::size_t>(e) * dims_, dims_};
  }
  Attr attr(EdgeId e, std::size_t dim) const {
    return attrs_[static_cast<std::size_t>(e) * dims_ + dim];
  }
  const std::vector<Attr>& attr_table() const { return attrs_; }

  std::span<const Incidence> incident(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::uint32_t full_degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  VertexId vertex_id(VertexRef ref) const;
  VertexRef vertex_ref(VertexId v) const;
  Layer layer_of(VertexId v) const { return v < upper_count() ? Layer::Upper : Layer::Lower; }
  bool contains(VertexRef ref) const;

  const std::string& label(VertexRef ref) const;
  const std::string& label(VertexId v) const { return label(vertex_ref(v)); }
  std::optional<VertexRef> find_vertex(Layer layer, const std::string& label) const;

  /// Same topology keeping only the first `k` attribute dimensions.
  BipartiteGraph project_dims(std::size_t k) const;
  /// Subgraph keeping only the listed edges (vertex sets unchanged).
  BipartiteGraph edge_subgraph(std::span<const EdgeId> keep) const;

  /// Largest upper and lower degree, average upper and lower degree over non-isolated vertices.
  struct DegreeSummary {
    std::uint32_t max_upper = 0, max_lower = 0;
    double avg_upper = 0, avg_lower = 0;
  };
  DegreeSummary degree_summary() const;

 private:
  void build_adjacency();

  Topology topology_;
  std::size_t dims_ = 0;
  std::vector<Attr> attrs_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Incidence> adjacency_;
  std::unordered_map<std::string, std::uint32_t> upper_index_, lower_index_;
};

/// Reads the line-oriented edge-list format: optional `# d=<k>` header, `#` comments,
/// data lines `<upper> <lower> <a1> ... <ad>`.
BipartiteGraph load_edge_list(std::istream& in);
BipartiteGraph load_edge_list_file(const std::string& path);

/// Reads a topology-only edge list (KONECT style): two labels per line, extra columns
/// ignored, lines starting with `#` or `%` skipped. Duplicate pairs are dropped.
Topology load_topology(std::istream& in);
Topology load_topology_file(const std::string& path);

/// Writes `# d=<k>` followed by one line per edge; attributes use the shortest
/// representation that reads back to the same value.
void write_edge_list(std::ostream& out, const BipartiteGraph& g);
void write_edge_list_file(const std::string& path, const BipartiteGraph& g);

std::string format_attr(Attr x);

/// Draws each of the d attributes of every edge independently and uniformly from
/// [lo, hi]. Deterministic in (topology, d, lo, hi, seed).
BipartiteGraph generate_attributes(const Topology& topology, std::size_t d, Attr lo, Attr hi,
                                   std::uint64_t seed);

/// Uniform random bipartite topology with exactly `edges` distinct edges.
Topology random_topology(std::size_t upper, std::size_t lower, std::size_t edges,
                         std::uint64_t seed);

/// Keeps round(fraction * m) edges chosen uniformly at random.
BipartiteGraph sample_edges(const BipartiteGraph& g, double fraction, std::uint64_t seed);

/// Mutable edge subset of a BipartiteGraph with per-vertex live degrees.
/// Single-owner scratch space; the underlying graph is never modified.
class WorkingGraph {
 public:
  /// Starts empty, or with every edge when `full` is set.
  explicit WorkingGraph(const BipartiteGraph& g, bool full = false);

  const BipartiteGraph& graph() const { return *graph_; }
  bool alive(EdgeId e) const { return alive_[e] != 0; }
  std::uint32_t degree(VertexId v) const { return degree_[v]; }
  std::size_t edge_count() const { return count_; }
  bool empty() const { return count_ == 0; }

  void add(EdgeId e);
  void remove(EdgeId e);
  void clear();

  /// Live edges in ascending id order.
  std::vector<EdgeId> edges() const;

  template <typename Fn>
  void for_each_live_incident(VertexId v, Fn&& fn) const {
    for (const Incidence& inc : graph_->incident(v))
      if (alive_[inc.edge]) fn(inc);
  }

  friend bool operator==(const WorkingGraph& a, const WorkingGraph& b) {
    return a.graph_ == b.graph_ && a.alive_ == b.alive_;
  }

 private:
  const BipartiteGraph* graph_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> degree_;
  std::size_t count_ = 0;
};

/// Working copy holding exactly the edges admitted by `box`. Throws DomainError when
/// box.dims() differs from g.dims().
WorkingGraph filtered_view(const BipartiteGraph& g, const ThresholdBox& box);

}  // namespace esc
