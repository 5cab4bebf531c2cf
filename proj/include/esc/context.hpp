#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "esc/core.hpp"
#include "esc/graph.hpp"
#include "esc/types.hpp"

namespace esc {

/// Switches for the result-neutral pruning rules. Turning any of them off must never
/// change a result set, only the amount of work.
struct PruningOptions {
  bool lemma_checks = true;    ///< edge/vertex-count and heavy-vertex tests before core extraction
  bool dominance_skip = true;  ///< skip anchors / frontier corners already covered by found vectors
  bool frontier_skip = true;   ///< peeling: only descend at candidate values some open corner still reaches

  static PruningOptions none() { return {false, false, false}; }
};

/// Everything fixed for one ESC query, plus the work counters it accumulates.
struct QueryContext {
  QueryContext(const BipartiteGraph& g, DegreeConstraint c, VertexRef q, PruningOptions p = {})
      : graph(g), constraint(c), query(q), query_id(g.vertex_id(q)), pruning(p) {}

  const BipartiteGraph& graph;
  DegreeConstraint constraint;
  VertexRef query;
  VertexId query_id;
  PruningOptions pruning;
  SearchStats stats;

  std::uint32_t query_bound() const { return constraint.bound(query.layer); }
  ThresholdBox vacuous_box() const { return ThresholdBox(graph.dims()); }

  /// Edges any community still being searched for may use, ascending by id. Starts as
  /// the whole graph; narrowed for the duration of a UniverseScope.
  std::span<const EdgeId> universe() { return *level().edges; }

  /// Universe ordered by (X_dim, id), computed on first use per level.
  std::span<const EdgeId> ascending(std::size_t dim) {
    Level& top = level();
    auto& order = top.by_dim.at(dim);
    if (order.size() == top.edges->size()) return order;
    const Level* parent = levels_.size() > 1 ? &levels_[levels_.size() - 2] : nullptr;
    if (parent && parent->by_dim[dim].size() == parent->edges->size()) {
      // Filtering the parent's order is linear; the universe only ever shrinks.
      if (++epoch_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        epoch_ = 1;
      }
      mark_.resize(graph.edge_count(), 0);
      for (EdgeId e : *top.edges) mark_[e] = epoch_;
      order.clear();
      order.reserve(top.edges->size());
      for (EdgeId e : parent->by_dim[dim])
        if (mark_[e] == epoch_) order.push_back(e);
    } else {
      order = *top.edges;
      std::stable_sort(order.begin(), order.end(),
                       [&](EdgeId a, EdgeId b) { return graph.attr(a, dim) < graph.attr(b, dim); });
    }
    return order;
  }

  /// Universe edges admitted by `box`.
  WorkingGraph view(const ThresholdBox& box) {
    WorkingGraph w(graph);
    for (EdgeId e : universe())
      if (box.admits(graph.attrs(e))) w.add(e);
    return w;
  }

 private:
  friend class UniverseScope;

  struct Level {
    std::shared_ptr<const std::vector<EdgeId>> edges;
    std::vector<std::vector<EdgeId>> by_dim;
  };

  Level& level() {
    if (levels_.empty()) {
      auto all = std::make_shared<std::vector<EdgeId>>(graph.edge_count());
      std::iota(all->begin(), all->end(), EdgeId{0});
      levels_.push_back({std::move(all), std::vector<std::vector<EdgeId>>(graph.dims())});
    }
    return levels_.back();
  }

  std::vector<Level> levels_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
};

using EdgeList = std::shared_ptr<const std::vector<EdgeId>>;

/// Narrows a context's universe to `edges` (ascending ids, a subset of the current
/// universe) until destruction. Valid only while every community still sought lies
/// inside the given edges.
class UniverseScope {
 public:
  UniverseScope(QueryContext& ctx, EdgeList edges) : ctx_(ctx) {
    ctx.level();
    ctx.levels_.push_back({std::move(edges), std::vector<std::vector<EdgeId>>(ctx.graph.dims())});
  }
  ~UniverseScope() { ctx_.levels_.pop_back(); }
  UniverseScope(const UniverseScope&) = delete;
  UniverseScope& operator=(const UniverseScope&) = delete;

 private:
  QueryContext& ctx_;
};

}  // namespace esc
